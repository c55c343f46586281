#include "qdm/errors.hpp"

namespace qdm {

IntegrationFailure::IntegrationFailure(const std::string& what, double time)
    : Error(what), time_(time) {}

ConfigError::ConfigError(const std::string& what, std::size_t line)
    : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

}  // namespace qdm

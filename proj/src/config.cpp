#include "secrecy/config.hpp"

#include <sstream>

namespace secrecy {

std::string_view to_string(Scheme s) { return s == Scheme::SS ? "SS" : "OS"; }
std::string_view to_string(Knowledge k) { return k == Knowledge::KA ? "KA" : "KU"; }

Scheme parse_scheme(std::string_view s) {
    if (s == "SS" || s == "ss") return Scheme::SS;
    if (s == "OS" || s == "os") return Scheme::OS;
    throw ConfigError("scheme", "expected \"SS\" or \"OS\", got \"" + std::string(s) + "\"");
}

Knowledge parse_knowledge(std::string_view s) {
    if (s == "KA" || s == "ka") return Knowledge::KA;
    if (s == "KU" || s == "ku") return Knowledge::KU;
    throw ConfigError("knowledge", "expected \"KA\" or \"KU\", got \"" + std::string(s) + "\"");
}

void SystemConfig::validate() const {
    if (transmitters < 1) throw ConfigError("K", "must be >= 1");
    if (eavesdroppers < 1) throw ConfigError("N", "must be >= 1");
    if (dest_paths < 1) throw ConfigError("M_D", "must be >= 1");
    if (eve_paths < 1) throw ConfigError("M_E", "must be >= 1");
    if (!(dest_snr > 0) || !std::isfinite(dest_snr)) throw ConfigError("lambda_D", "must be positive and finite");
    if (!(eve_snr > 0) || !std::isfinite(eve_snr)) throw ConfigError("lambda_E", "must be positive and finite");
    if (!(backhaul_reliability >= 0 && backhaul_reliability <= 1)) throw ConfigError("zeta", "must lie in [0, 1]");
    if (!(rate_threshold >= 0) || !std::isfinite(rate_threshold)) throw ConfigError("R_th", "must be >= 0 and finite");
}

std::string SystemConfig::describe() const {
    std::ostringstream os;
    os << to_string(scheme) << '-' << to_string(knowledge) << " K=" << transmitters << " N=" << eavesdroppers
       << " M_D=" << dest_paths << " M_E=" << eve_paths << " lambda_D=" << dest_snr << " lambda_E=" << eve_snr
       << " zeta=" << backhaul_reliability << " R_th=" << rate_threshold;
    return os.str();
}

}  // namespace secrecy

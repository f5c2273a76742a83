#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace secrecy {

enum class Scheme { SS, OS };     ///< sub-optimal (destination-SNR) / optimal (secrecy-ratio) selection
enum class Knowledge { KA, KU };  ///< backhaul activity known / unknown at selection time

std::string_view to_string(Scheme s);
std::string_view to_string(Knowledge k);
Scheme parse_scheme(std::string_view s);
Knowledge parse_knowledge(std::string_view s);

/// Thrown when a scenario parameter is out of range; field() names the offender.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& reason)
        : std::invalid_argument(field + ": " + reason), field_(std::move(field)) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

/// One transmitter-selection scenario. SNRs are linear, per multipath component.
struct SystemConfig {
    int transmitters = 1;             // K
    int eavesdroppers = 1;            // N
    int dest_paths = 1;               // M_D
    int eve_paths = 1;                // M_E
    double dest_snr = 1.0;            // lambda_D
    double eve_snr = 1.0;             // lambda_E
    double backhaul_reliability = 1;  // zeta
    double rate_threshold = 1.0;      // R_th, bits per channel use
    Scheme scheme = Scheme::SS;
    Knowledge knowledge = Knowledge::KA;

    /// 2^R_th, the SOP evaluation point of the ratio CDF.
    double rho() const { return std::exp2(rate_threshold); }

    /// Throws ConfigError naming the first invalid field.
    void validate() const;

    std::string describe() const;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace secrecy

#include "secrecy/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "secrecy/algebra.hpp"
#include "secrecy/esr.hpp"
#include "secrecy/oracles.hpp"
#include "secrecy/sop.hpp"

namespace secrecy::sweep {

using nlohmann::json;

const std::vector<std::string> kPrefixColumns = {"variant_id", "scheme", "knowledge",   "K",           "N",   "M_D",
                                                 "M_E",        "zeta",   "lambda_D_dB", "lambda_E_dB", "R_th"};

namespace {

const std::vector<std::pair<Output, std::string>> kOutputNames = {
    {Output::sop_exact, "sop_exact"},       {Output::sop_asymptotic, "sop_asymptotic"},
    {Output::esr_exact, "esr_exact"},       {Output::esr_high_snr, "esr_high_snr"},
    {Output::esr_asymptotic, "esr_asymptotic"}, {Output::mc, "mc"},
    {Output::quad, "quad"}};

const std::set<std::string> kSystemKeys = {"scheme", "knowledge", "K",           "N",           "M_D",
                                           "M_E",    "zeta",      "lambda_D_dB", "lambda_E_dB", "R_th"};
const std::set<std::string> kVariantKeys = {"id", "scheme", "knowledge", "K", "N", "M_D", "M_E", "zeta"};
const std::set<std::string> kTopKeys = {"base",    "sweep_axis", "axis_values", "variants",
                                        "outputs", "trials",     "seed",        "svg"};

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) throw ConfigError(prefix + k, "unknown field");
}

double get_real(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
    return d;
}

int get_count(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
    const auto i = v.get<std::int64_t>();
    if (i < 1 || i > 1000) throw ConfigError(field, "must lie in [1, 1000]");
    return static_cast<int>(i);
}

std::string get_string(const json& v, const std::string& field) {
    if (!v.is_string()) throw ConfigError(field, "expected a string");
    return v.get<std::string>();
}

// Applies the scenario fields present in obj onto cfg.
void apply_fields(const json& obj, SystemConfig& cfg, const std::string& prefix) {
    auto at = [&](const char* k) -> const json* { return obj.contains(k) ? &obj.at(k) : nullptr; };
    try {
        if (auto v = at("scheme")) cfg.scheme = parse_scheme(get_string(*v, prefix + "scheme"));
        if (auto v = at("knowledge")) cfg.knowledge = parse_knowledge(get_string(*v, prefix + "knowledge"));
    } catch (const ConfigError& e) {
        if (e.field().rfind(prefix, 0) == 0 && !prefix.empty()) throw;
        throw ConfigError(prefix + e.field(), std::string(e.what()).substr(e.field().size() + 2));
    }
    if (auto v = at("K")) cfg.transmitters = get_count(*v, prefix + "K");
    if (auto v = at("N")) cfg.eavesdroppers = get_count(*v, prefix + "N");
    if (auto v = at("M_D")) cfg.dest_paths = get_count(*v, prefix + "M_D");
    if (auto v = at("M_E")) cfg.eve_paths = get_count(*v, prefix + "M_E");
    if (auto v = at("zeta")) cfg.backhaul_reliability = get_real(*v, prefix + "zeta");
    if (auto v = at("R_th")) cfg.rate_threshold = get_real(*v, prefix + "R_th");
}

void validate_as(const SystemConfig& cfg, const std::string& prefix) {
    try {
        cfg.validate();
    } catch (const ConfigError& e) {
        const std::string reason = std::string(e.what()).substr(e.field().size() + 2);
        std::string field = e.field();
        if (field == "lambda_D") field = "lambda_D_dB";
        if (field == "lambda_E") field = "lambda_E_dB";
        throw ConfigError(prefix + field, reason);
    }
}

std::string default_id(const SystemConfig& c) {
    std::ostringstream os;
    os << to_string(c.scheme) << '-' << to_string(c.knowledge) << "-K" << c.transmitters << "N" << c.eavesdroppers
       << "MD" << c.dest_paths << "ME" << c.eve_paths << "z" << c.backhaul_reliability;
    return os.str();
}

}  // namespace

bool SweepSpec::wants(Output o) const { return std::find(outputs.begin(), outputs.end(), o) != outputs.end(); }

SweepSpec parse_spec(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config", "expected a JSON object");
    reject_unknown(doc, kTopKeys, "");
    SweepSpec s;

    if (!doc.contains("base")) throw ConfigError("base", "missing");
    const json& base = doc.at("base");
    if (!base.is_object()) throw ConfigError("base", "expected an object");
    reject_unknown(base, kSystemKeys, "base.");
    apply_fields(base, s.base, "");
    if (!base.contains("lambda_E_dB")) throw ConfigError("lambda_E_dB", "missing from base");
    s.lambda_e_db = get_real(base.at("lambda_E_dB"), "lambda_E_dB");
    s.base.eve_snr = db_to_linear(s.lambda_e_db);
    if (base.contains("lambda_D_dB")) s.base.dest_snr = db_to_linear(get_real(base.at("lambda_D_dB"), "lambda_D_dB"));
    validate_as(s.base, "");

    if (doc.contains("sweep_axis")) s.sweep_axis = get_string(doc.at("sweep_axis"), "sweep_axis");
    if (s.sweep_axis != "lambda_D_dB") throw ConfigError("sweep_axis", "only \"lambda_D_dB\" is supported");

    if (doc.contains("axis_values")) {
        const json& av = doc.at("axis_values");
        if (!av.is_array()) throw ConfigError("axis_values", "expected an array");
        for (std::size_t i = 0; i < av.size(); ++i)
            s.axis_values.push_back(get_real(av[i], "axis_values[" + std::to_string(i) + "]"));
    } else if (base.contains("lambda_D_dB")) {
        s.axis_values.push_back(get_real(base.at("lambda_D_dB"), "lambda_D_dB"));
    }
    if (s.axis_values.empty()) throw ConfigError("axis_values", "must be nonempty");
    for (std::size_t i = 1; i < s.axis_values.size(); ++i)
        if (!(s.axis_values[i] > s.axis_values[i - 1]))
            throw ConfigError("axis_values", "must be strictly increasing");

    if (doc.contains("variants")) {
        const json& vs = doc.at("variants");
        if (!vs.is_array()) throw ConfigError("variants", "expected an array");
        std::set<std::string> ids;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            const std::string prefix = "variants[" + std::to_string(i) + "].";
            if (!vs[i].is_object()) throw ConfigError("variants[" + std::to_string(i) + "]", "expected an object");
            reject_unknown(vs[i], kVariantKeys, prefix);
            Variant v;
            v.cfg = s.base;
            v.lambda_e_db = s.lambda_e_db;
            apply_fields(vs[i], v.cfg, prefix);
            validate_as(v.cfg, prefix);
            v.id = vs[i].contains("id") ? get_string(vs[i].at("id"), prefix + "id") : default_id(v.cfg);
            if (v.id.empty() || v.id.find_first_of(",\"\n\r") != std::string::npos)
                throw ConfigError(prefix + "id", "must be nonempty without commas, quotes or newlines");
            if (!ids.insert(v.id).second) throw ConfigError(prefix + "id", "duplicate id \"" + v.id + "\"");
            s.variants.push_back(std::move(v));
        }
    }
    if (s.variants.empty()) s.variants.push_back({"base", s.base, s.lambda_e_db});

    if (doc.contains("outputs")) {
        const json& os = doc.at("outputs");
        if (!os.is_array()) throw ConfigError("outputs", "expected an array");
        std::set<std::string> seen;
        for (std::size_t i = 0; i < os.size(); ++i) {
            const std::string name = get_string(os[i], "outputs[" + std::to_string(i) + "]");
            auto it = std::find_if(kOutputNames.begin(), kOutputNames.end(),
                                   [&](const auto& p) { return p.second == name; });
            if (it == kOutputNames.end())
                throw ConfigError("outputs[" + std::to_string(i) + "]", "unknown output \"" + name + "\"");
            seen.insert(name);
        }
        for (const auto& [o, name] : kOutputNames)
            if (seen.count(name)) s.outputs.push_back(o);
    } else {
        s.outputs = {Output::sop_exact, Output::esr_exact};
    }
    if (s.outputs.empty()) throw ConfigError("outputs", "must be nonempty");

    if (doc.contains("trials")) {
        const json& t = doc.at("trials");
        if (!t.is_number_integer() || t.get<std::int64_t>() < 1) throw ConfigError("trials", "expected a positive integer");
        s.trials = t.get<std::uint64_t>();
    }
    if (s.wants(Output::mc)) {
        if (s.trials < oracles::kMinTrials)
            throw ConfigError("trials", "must be >= " + std::to_string(oracles::kMinTrials) + " when mc is requested");
        for (std::size_t i = 0; i < s.variants.size(); ++i)
            if (s.variants[i].cfg.transmitters > 16)
                throw ConfigError(s.variants.size() == 1 && !doc.contains("variants") ? "K" : "variants[" + std::to_string(i) + "].K",
                                  "Monte Carlo supports at most 16 transmitters");
    }
    if (doc.contains("seed")) {
        const json& sd = doc.at("seed");
        if (!sd.is_number_unsigned()) throw ConfigError("seed", "expected an unsigned 64-bit integer");
        s.seed = sd.get<std::uint64_t>();
    }
    if (doc.contains("svg")) {
        if (!doc.at("svg").is_boolean()) throw ConfigError("svg", "expected true or false");
        s.svg = doc.at("svg").get<bool>();
    }
    return s;
}

SweepSpec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("malformed JSON: ") + e.what());
    }
    return parse_spec(doc);
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env, std::uint64_t config_seed) {
    if (flag) return *flag;
    if (env && *env) {
        const std::string s(env);
        if (s.find_first_not_of("0123456789") != std::string::npos)
            throw ConfigError("SECRECY_LAB_SEED", "expected an unsigned 64-bit integer");
        try {
            return std::stoull(s);
        } catch (const std::exception&) {
            throw ConfigError("SECRECY_LAB_SEED", "expected an unsigned 64-bit integer");
        }
    }
    return config_seed;
}

std::vector<std::string> output_columns(const SweepSpec& spec) {
    std::vector<std::string> c;
    const bool mc = spec.wants(Output::mc), quad = spec.wants(Output::quad);
    for (const auto& [o, name] : kOutputNames) {
        if (!spec.wants(o)) continue;
        if (o == Output::mc)
            c.insert(c.end(), {"mc_sop", "mc_esr"});
        else if (o == Output::quad)
            c.insert(c.end(), {"quad_sop", "quad_esr"});
        else
            c.push_back(name);
    }
    if (mc) {
        c.push_back("mc_sop_stderr");
        c.push_back("mc_esr_stderr");
    }
    if (spec.wants(Output::sop_exact) && quad) c.push_back("sop_quad_delta");
    if (spec.wants(Output::sop_exact) && mc) c.push_back("sop_mc_delta");
    if (spec.wants(Output::esr_exact) && quad) c.push_back("esr_quad_delta");
    if (spec.wants(Output::esr_exact) && mc) c.push_back("esr_mc_delta");
    return c;
}

namespace {

Row evaluate_row(const SweepSpec& spec, const std::vector<std::string>& cols, const Variant& v, double ld_db) {
    Row r;
    r.variant_id = v.id;
    r.cfg = v.cfg;
    r.cfg.dest_snr = db_to_linear(ld_db);
    r.lambda_d_db = ld_db;
    r.lambda_e_db = v.lambda_e_db;
    const SystemConfig& c = r.cfg;

    std::map<std::string, double> val;
    if (spec.wants(Output::sop_exact)) val["sop_exact"] = sop::sop(c).value;
    if (spec.wants(Output::sop_asymptotic))
        val["sop_asymptotic"] = c.backhaul_reliability < 1 ? sop::sop_asymptotic(c).value
                                                          : sop::sop_asymptotic_perfect_backhaul(c).value;
    if (spec.wants(Output::esr_exact)) val["esr_exact"] = esr::esr_exact(c).value;
    if (spec.wants(Output::esr_high_snr)) val["esr_high_snr"] = esr::esr_high_snr(c).value;
    if (spec.wants(Output::esr_asymptotic)) val["esr_asymptotic"] = esr::esr_asymptotic(c).value;
    if (spec.wants(Output::mc)) {
        const auto est = oracles::mc_all_variants(c, spec.trials, spec.seed, 1);
        const auto& s = est.sop_of(c.scheme, c.knowledge);
        const auto& e = est.esr_of(c.scheme, c.knowledge);
        val["mc_sop"] = s.mean;
        val["mc_esr"] = e.mean;
        val["mc_sop_stderr"] = s.stderr_;
        val["mc_esr_stderr"] = e.stderr_;
    }
    if (spec.wants(Output::quad)) {
        val["quad_sop"] = oracles::quad_sop(c);
        val["quad_esr"] = oracles::quad_esr(c);
    }
    if (val.count("sop_exact") && val.count("quad_sop")) val["sop_quad_delta"] = val["sop_exact"] - val["quad_sop"];
    if (val.count("sop_exact") && val.count("mc_sop")) val["sop_mc_delta"] = val["sop_exact"] - val["mc_sop"];
    if (val.count("esr_exact") && val.count("quad_esr")) val["esr_quad_delta"] = val["esr_exact"] - val["quad_esr"];
    if (val.count("esr_exact") && val.count("mc_esr")) val["esr_mc_delta"] = val["esr_exact"] - val["mc_esr"];

    for (const auto& name : cols) r.values.push_back(val.at(name));
    return r;
}

}  // namespace

Table evaluate(const SweepSpec& spec, unsigned threads) {
    Table t;
    t.columns = output_columns(spec);
    struct Job {
        const Variant* v;
        double ld_db;
    };
    std::vector<Job> jobs;
    for (const auto& v : spec.variants)
        for (double x : spec.axis_values) jobs.push_back({&v, x});
    t.rows.resize(jobs.size());

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();) {
            {
                std::lock_guard lock(failure_mutex);
                if (failure) return;
            }
            try {
                t.rows[i] = evaluate_row(spec, t.columns, *jobs[i].v, jobs[i].ld_db);
            } catch (const algebra::CapacityError& e) {
                SystemConfig c = jobs[i].v->cfg;
                c.dest_snr = db_to_linear(jobs[i].ld_db);
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::make_exception_ptr(algebra::CapacityError(
                        std::string(e.what()) + " [row " + std::to_string(i) + ", variant " + jobs[i].v->id + ": " +
                        c.describe() + "]"));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs.size())));
    std::vector<std::thread> pool;
    for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return t;
}

std::vector<std::string> row_flags(const Table& t, const Row& r) {
    std::vector<std::string> flags;
    auto idx = [&](const std::string& name) -> std::optional<double> {
        auto it = std::find(t.columns.begin(), t.columns.end(), name);
        if (it == t.columns.end()) return std::nullopt;
        return r.values[static_cast<std::size_t>(it - t.columns.begin())];
    };
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        if (!std::isfinite(r.values[i])) flags.push_back(t.columns[i] + " not finite");
    for (const char* p : {"sop_exact", "sop_asymptotic", "mc_sop", "quad_sop"})
        if (auto v = idx(p); v && !(*v >= 0 && *v <= 1)) flags.push_back(std::string(p) + " outside [0,1]");
    if (auto d = idx("sop_quad_delta"); d && !(std::abs(*d) <= 1e-6)) flags.push_back("sop_quad_delta > 1e-6");
    if (auto d = idx("esr_quad_delta"); d && !(std::abs(*d) <= 1e-5)) flags.push_back("esr_quad_delta > 1e-5");
    if (auto d = idx("sop_mc_delta"); d && !(std::abs(*d) <= 3 * *idx("mc_sop_stderr")))
        flags.push_back("sop_mc_delta > 3 stderr");
    if (auto d = idx("esr_mc_delta"); d && !(std::abs(*d) <= std::max(3 * *idx("mc_esr_stderr"), 0.02)))
        flags.push_back("esr_mc_delta > max(3 stderr, 0.02)");
    return flags;
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string to_csv(const Table& t) {
    std::ostringstream os;
    bool first = true;
    for (const auto& c : kPrefixColumns) os << (first ? "" : ",") << c, first = false;
    for (const auto& c : t.columns) os << ',' << c;
    os << '\n';
    for (const auto& r : t.rows) {
        const auto& c = r.cfg;
        os << r.variant_id << ',' << to_string(c.scheme) << ',' << to_string(c.knowledge) << ',' << c.transmitters << ','
           << c.eavesdroppers << ',' << c.dest_paths << ',' << c.eve_paths << ','
           << format_number(c.backhaul_reliability) << ',' << format_number(r.lambda_d_db) << ','
           << format_number(r.lambda_e_db) << ',' << format_number(c.rate_threshold);
        for (double v : r.values) os << ',' << format_number(v);
        os << '\n';
    }
    return os.str();
}

void write_csv(const std::string& path, const Table& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_csv(t);
    if (!out) throw std::runtime_error("write failed: " + path);
}

CsvData parse_csv(const std::string& text) {
    CsvData d;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::size_t start = 0;
        for (;;) {
            const auto comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (header)
            d.header = std::move(cells), header = false;
        else
            d.rows.push_back(std::move(cells));
    }
    return d;
}

// ---------------------------------------------------------------------------
// SVG

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};

struct Series {
    std::string name;
    std::vector<double> y;
};

std::string render_svg(const std::string& title, const std::vector<double>& x, const std::vector<Series>& series,
                       bool log_y) {
    constexpr double W = 640, H = 420, L = 70, R = 160, T = 40, B = 50;
    auto ty = [&](double v) { return log_y ? std::log10(v) : v; };
    double ylo = std::numeric_limits<double>::infinity(), yhi = -ylo;
    for (const auto& s : series)
        for (double v : s.y)
            if (std::isfinite(ty(v))) ylo = std::min(ylo, ty(v)), yhi = std::max(yhi, ty(v));
    if (!std::isfinite(ylo)) ylo = 0, yhi = 1;
    if (log_y) ylo = std::floor(ylo), yhi = std::ceil(yhi);
    if (yhi - ylo < 1e-12) yhi = ylo + 1;
    const double xlo = x.front(), xhi = x.size() > 1 ? x.back() : x.front() + 1;
    auto px = [&](double v) { return L + (v - xlo) / (xhi - xlo) * (W - L - R); };
    auto py = [&](double v) { return H - B - (v - ylo) / (yhi - ylo) * (H - T - B); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << L << "\" y=\"24\" font-size=\"14\">" << title << "</text>\n";
    os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
       << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int yticks = log_y ? static_cast<int>(yhi - ylo) : 5;
    for (int i = 0; i <= yticks; ++i) {
        const double v = ylo + (yhi - ylo) * i / yticks;
        char lab[32];
        if (log_y)
            std::snprintf(lab, sizeof lab, "1e%d", static_cast<int>(std::lround(v)));
        else
            std::snprintf(lab, sizeof lab, "%.3g", v);
        os << "<line x1=\"" << L << "\" x2=\"" << W - R << "\" y1=\"" << py(v) << "\" y2=\"" << py(v)
           << "\" stroke=\"#ddd\"/><text x=\"" << L - 6 << "\" y=\"" << py(v) + 4 << "\" text-anchor=\"end\">" << lab
           << "</text>\n";
    }
    for (double v : x) {
        char lab[32];
        std::snprintf(lab, sizeof lab, "%g", v);
        os << "<text x=\"" << px(v) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << lab << "</text>\n";
    }
    os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">lambda_D (dB)</text>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* col = kPalette[s % std::size(kPalette)];
        os << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < x.size(); ++i)
            if (std::isfinite(ty(series[s].y[i]))) os << px(x[i]) << ',' << py(ty(series[s].y[i])) << ' ';
        os << "\"/>\n";
        os << "<text x=\"" << W - R + 10 << "\" y=\"" << T + 14 + 16 * s << "\" fill=\"" << col << "\">"
           << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::vector<std::string> write_svgs(const std::string& csv_path, const Table& t) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;
    const fs::path base(csv_path);
    std::vector<std::string> order;
    for (const auto& r : t.rows)
        if (std::find(order.begin(), order.end(), r.variant_id) == order.end()) order.push_back(r.variant_id);
    for (const auto& id : order) {
        std::vector<double> x;
        std::vector<const Row*> rows;
        for (const auto& r : t.rows)
            if (r.variant_id == id) x.push_back(r.lambda_d_db), rows.push_back(&r);
        for (const std::string family : {"sop", "esr"}) {
            std::vector<Series> series;
            for (std::size_t c = 0; c < t.columns.size(); ++c) {
                const auto& name = t.columns[c];
                if (name.find(family) == std::string::npos || name.find("stderr") != std::string::npos ||
                    name.find("delta") != std::string::npos)
                    continue;
                Series s{name, {}};
                for (const Row* r : rows) s.y.push_back(r->values[c]);
                series.push_back(std::move(s));
            }
            if (series.empty()) continue;
            const fs::path out = base.parent_path() / (base.stem().string() + "_" + id + "_" + family + ".svg");
            std::ofstream f(out, std::ios::binary);
            if (!f) throw std::runtime_error("cannot write " + out.string());
            f << render_svg(id + (family == "sop" ? "  SOP" : "  ESR (bpcu)"), x, series, family == "sop");
            written.push_back(out.string());
        }
    }
    return written;
}

}  // namespace secrecy::sweep

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "secrecy/sweep.hpp"

using namespace secrecy;
using namespace secrecy::sweep;
using nlohmann::json;

namespace {

json base_doc() {
    return json::parse(R"({
        "base": {"scheme": "SS", "knowledge": "KA", "K": 2, "N": 2, "M_D": 2, "M_E": 1, "zeta": 0.9,
                 "lambda_E_dB": 5, "R_th": 1},
        "axis_values": [0, 10, 20],
        "variants": [{"id": "a"}, {"id": "b", "scheme": "OS", "knowledge": "KU", "K": 3}],
        "outputs": ["sop_exact", "esr_exact", "mc", "quad"],
        "trials": 20000,
        "seed": 5
    })");
}

std::string field_of(const json& doc) {
    try {
        parse_spec(doc);
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "";
}

}  // namespace

TEST_CASE("config parsing") {
    const auto s = parse_spec(base_doc());
    CHECK(s.axis_values == std::vector<double>{0, 10, 20});
    REQUIRE(s.variants.size() == 2);
    CHECK(s.variants[1].cfg.scheme == Scheme::OS);
    CHECK(s.variants[1].cfg.knowledge == Knowledge::KU);
    CHECK(s.variants[1].cfg.transmitters == 3);
    CHECK(s.variants[1].cfg.eavesdroppers == 2);
    CHECK(s.variants[0].cfg.eve_snr == doctest::Approx(std::pow(10.0, 0.5)));
    CHECK(s.trials == 20000);
    CHECK(s.seed == 5);
    CHECK(s.wants(Output::mc));
    CHECK_FALSE(s.wants(Output::esr_high_snr));
}

TEST_CASE("schema errors name the field") {
    auto d = base_doc();
    d["base"]["zeta"] = 1.5;
    CHECK(field_of(d) == "zeta");
    d = base_doc();
    d["variants"][1]["zeta"] = -0.1;
    CHECK(field_of(d) == "variants[1].zeta");
    d = base_doc();
    d["axis_values"] = json::array({10, 5});
    CHECK(field_of(d) == "axis_values");
    d = base_doc();
    d["axis_values"] = json::array();
    CHECK(field_of(d) == "axis_values");
    d = base_doc();
    d["outputs"] = json::array({"sop_exact", "bogus"});
    CHECK(field_of(d) == "outputs[1]");
    d = base_doc();
    d["base"]["K"] = 0;
    CHECK(field_of(d) == "K");
    d = base_doc();
    d["base"]["K"] = 1.5;
    CHECK(field_of(d) == "K");
    d = base_doc();
    d["colour"] = "red";
    CHECK(field_of(d) == "colour");
    d = base_doc();
    d["sweep_axis"] = "lambda_E_dB";
    CHECK(field_of(d) == "sweep_axis");
    d = base_doc();
    d["trials"] = 10;
    CHECK(field_of(d) == "trials");
    d = base_doc();
    d["seed"] = -1;
    CHECK(field_of(d) == "seed");
    d = base_doc();
    d["base"]["scheme"] = "XS";
    CHECK(field_of(d) == "scheme");
    d = base_doc();
    d["variants"][0]["knowledge"] = "KX";
    CHECK(field_of(d) == "variants[0].knowledge");
    d = base_doc();
    d["variants"][1]["id"] = "a";
    CHECK(field_of(d) == "variants[1].id");
    d = base_doc();
    d["base"].erase("lambda_E_dB");
    CHECK(field_of(d) == "lambda_E_dB");
}

TEST_CASE("seed precedence") {
    CHECK(resolve_seed(7, "9", 3) == 7);
    CHECK(resolve_seed(std::nullopt, "9", 3) == 9);
    CHECK(resolve_seed(std::nullopt, nullptr, 3) == 3);
    CHECK(resolve_seed(std::nullopt, "", 3) == 3);
    CHECK(resolve_seed(std::nullopt, "18446744073709551615", 3) == 18446744073709551615ULL);
    CHECK_THROWS_AS(resolve_seed(std::nullopt, "12x", 3), ConfigError);
}

TEST_CASE("empty variants give a sweep of the base config") {
    auto d = base_doc();
    d.erase("variants");
    d["axis_values"] = json::array({10});
    d["outputs"] = json::array({"sop_exact"});
    const auto t = evaluate(parse_spec(d));
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].variant_id == "base");
    CHECK(t.columns == std::vector<std::string>{"sop_exact"});
}

TEST_CASE("column layout") {
    auto s = parse_spec(base_doc());
    CHECK(output_columns(s) ==
          std::vector<std::string>{"sop_exact", "esr_exact", "mc_sop", "mc_esr", "quad_sop", "quad_esr",
                                   "mc_sop_stderr", "mc_esr_stderr", "sop_quad_delta", "sop_mc_delta",
                                   "esr_quad_delta", "esr_mc_delta"});
    const auto t = evaluate(s);
    const auto csv = parse_csv(to_csv(t));
    REQUIRE(csv.header.size() == kPrefixColumns.size() + t.columns.size());
    CHECK(std::equal(kPrefixColumns.begin(), kPrefixColumns.end(), csv.header.begin()));
}

TEST_CASE("rows: finite cells, valid probabilities, clean flags") {
    const auto t = evaluate(parse_spec(base_doc()));
    CHECK(t.rows.size() == 6);
    CHECK(t.rows[0].variant_id == "a");
    CHECK(t.rows[3].variant_id == "b");
    CHECK(t.rows[4].lambda_d_db == 10);
    for (const auto& r : t.rows) {
        for (double v : r.values) CHECK(std::isfinite(v));
        CHECK(r.values[0] >= 0);
        CHECK(r.values[0] <= 1);
        CHECK(row_flags(t, r).empty());
    }
}

TEST_CASE("CSV round trip and determinism across thread counts") {
    const auto spec = parse_spec(base_doc());
    const auto one = evaluate(spec, 1);
    const auto three = evaluate(spec, 3);
    const std::string text = to_csv(one);
    CHECK(text == to_csv(three));
    CHECK(text == to_csv(evaluate(spec, 2)));
    const auto csv = parse_csv(text);
    REQUIRE(csv.rows.size() == one.rows.size());
    const std::size_t off = kPrefixColumns.size();
    for (std::size_t i = 0; i < csv.rows.size(); ++i) {
        CHECK(std::strtod(csv.rows[i][8].c_str(), nullptr) == one.rows[i].lambda_d_db);
        for (std::size_t j = 0; j < one.columns.size(); ++j)
            CHECK(std::strtod(csv.rows[i][off + j].c_str(), nullptr) == one.rows[i].values[j]);
    }
    CHECK(format_number(0.1) == "0.10000000000000001");
}

TEST_CASE("SOP columns decrease along the axis for a perfect backhaul") {
    auto d = base_doc();
    d["base"]["zeta"] = 1;
    d["outputs"] = json::array({"sop_exact", "sop_asymptotic", "esr_exact", "esr_high_snr", "esr_asymptotic"});
    d["axis_values"] = json::array({0, 5, 10, 15, 20, 25, 30});
    const auto t = evaluate(parse_spec(d));
    for (std::size_t i = 1; i < t.rows.size(); ++i)
        if (t.rows[i].variant_id == t.rows[i - 1].variant_id) {
            CHECK(t.rows[i].values[0] < t.rows[i - 1].values[0]);
            CHECK(t.rows[i].values[2] > t.rows[i - 1].values[2]);
        }
}

TEST_CASE("SVG output") {
    const auto dir = std::filesystem::temp_directory_path() / "secrecy_sweep_svg";
    std::filesystem::create_directories(dir);
    auto d = base_doc();
    d["outputs"] = json::array({"sop_exact", "esr_exact"});
    const auto t = evaluate(parse_spec(d));
    const auto files = write_svgs((dir / "out.csv").string(), t);
    CHECK(files.size() == 4);
    for (const auto& f : files) {
        std::ifstream in(f);
        std::string first;
        std::getline(in, first);
        CHECK(first.rfind("<svg", 0) == 0);
    }
    std::filesystem::remove_all(dir);
}

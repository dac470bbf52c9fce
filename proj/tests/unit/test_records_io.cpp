#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "dephcorr/errors.hpp"
#include "dephcorr/records_io.hpp"

using namespace dephcorr;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name)
{
    const fs::path p = fs::temp_directory_path() / "dephcorr_records_test" / name;
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("CSV round trip")
{
    std::vector<CorrelationRecord> recs{{0.0, 0.0, 1.0, 1.0, 1, 2.0, 0.0},
                                        {0.5, 0.123456789012, 0.9, 3.25, 4, 1.5, 0.5}};
    const std::string csv = format_records(recs);
    CHECK(csv.rfind(kRecordHeader, 0) == 0);
    CHECK(csv.find('\r') == std::string::npos);
    const auto back = parse_records(csv);
    REQUIRE(back.size() == 2);
    CHECK(back[1].negativity == doctest::Approx(0.123456789012).epsilon(1e-12));
    CHECK(back[1].effective_hs_rank == 4);
    CHECK_THROWS_AS(parse_records("a,b\n1,2\n"), ParameterError);
    CHECK_THROWS_AS(parse_records(std::string(kRecordHeader) + "\n1,2,3\n"), ParameterError);
}

TEST_CASE("config JSON round trip for every scenario")
{
    for (const auto& cfg : builtin_scenarios()) {
        const auto back = config_from_json(config_to_json(cfg));
        CHECK(back.name == cfg.name);
        CHECK(back.inter.gamma == cfg.inter.gamma);
        CHECK(back.inter.s == cfg.inter.s);
        CHECK(back.bath.has_value() == cfg.bath.has_value());
        if (cfg.bath) CHECK(back.bath->phi == cfg.bath->phi);
        CHECK(back.k_list == cfg.k_list);
        CHECK(back.grid.samples == cfg.grid.samples);
        CHECK(back.initial == cfg.initial);
    }
    auto j = config_to_json(find_scenario("AG"));
    j["interaction"]["kind"] = "Cubic";
    CHECK_THROWS_AS(config_from_json(j), ParameterError);
}

TEST_CASE("write_run emits the CSV and its sidecar")
{
    const fs::path dir = scratch("run");
    const auto cfg = find_scenario("B1");
    std::vector<CorrelationRecord> recs{{0.0, 0.0, 1.0, 1.0, 1, 4.0, 0.0}};
    write_run(recs, cfg, 4, dir / "B1_k4.csv");
    CHECK(read_records(dir / "B1_k4.csv").size() == 1);
    std::ifstream in(dir / "B1_k4.json");
    REQUIRE(in);
    nlohmann::json j;
    in >> j;
    CHECK(j.at("k").get<int>() == 4);
    CHECK(config_from_json(j).name == "B1");
    CHECK_THROWS_AS(read_records(dir / "missing.csv"), std::runtime_error);
}

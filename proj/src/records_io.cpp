#include "dephcorr/records_io.hpp"

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dephcorr/errors.hpp"

namespace dephcorr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void append_number(std::string& out, double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    out += buf;
}

const char* bath_kind_name(BathKind k) { return k == BathKind::Gaussian ? "Gaussian" : "Poissonian"; }
const char* interaction_kind_name(InteractionKind k)
{
    return k == InteractionKind::BandLimited ? "BandLimited" : "Nonlinear";
}
const char* initial_name(InitialKind k) { return k == InitialKind::KZero ? "KZero" : "MaxCorrelated"; }

}  // namespace

std::string format_records(const std::vector<CorrelationRecord>& records)
{
    std::string out = kRecordHeader;
    out += '\n';
    for (const auto& r : records) {
        append_number(out, r.t);
        out += ',';
        append_number(out, r.negativity);
        out += ',';
        append_number(out, r.purity);
        out += ',';
        append_number(out, r.hs_participation);
        out += ',';
        out += std::to_string(r.effective_hs_rank);
        out += ',';
        append_number(out, r.energy1);
        out += ',';
        append_number(out, r.energy2);
        out += '\n';
    }
    return out;
}

std::vector<CorrelationRecord> parse_records(const std::string& csv)
{
    std::istringstream in(csv);
    std::string line;
    if (!std::getline(in, line) || line != kRecordHeader) {
        throw ParameterError("record CSV: missing or unexpected header");
    }
    std::vector<CorrelationRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        CorrelationRecord r;
        char trailing = 0;
        const int n = std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%ld,%lf,%lf%c", &r.t, &r.negativity,
                                  &r.purity, &r.hs_participation, &r.effective_hs_rank, &r.energy1,
                                  &r.energy2, &trailing);
        if (n != 7) throw ParameterError("record CSV: malformed row '" + line + "'");
        out.push_back(r);
    }
    return out;
}

void write_text_atomic(const fs::path& path, const std::string& text)
{
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
    }
    std::random_device rd;
    fs::path tmp = path;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw std::runtime_error("write failed for " + path.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw std::runtime_error("cannot move output into place at " + path.string());
    }
}

void write_records(const std::vector<CorrelationRecord>& records, const fs::path& path)
{
    write_text_atomic(path, format_records(records));
}

std::vector<CorrelationRecord> read_records(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_records(buf.str());
}

json config_to_json(const ScenarioConfig& cfg)
{
    json j;
    j["name"] = cfg.name;
    j["osc"] = {{"omega1", cfg.osc.omega1}, {"omega2", cfg.osc.omega2}};
    if (cfg.bath) {
        j["bath"] = {{"kind", bath_kind_name(cfg.bath->kind)},
                     {"gamma1", cfg.bath->gamma1},
                     {"gamma2", cfg.bath->gamma2},
                     {"phi", cfg.bath->phi}};
    } else {
        j["bath"] = nullptr;
    }
    j["interaction"] = {{"kind", interaction_kind_name(cfg.inter.kind)},
                        {"gamma", cfg.inter.gamma},
                        {"r", cfg.inter.r},
                        {"s", cfg.inter.s}};
    j["k_list"] = cfg.k_list;
    j["grid"] = {{"t_end", cfg.grid.t_end}, {"samples", cfg.grid.samples}, {"max_step", cfg.grid.max_step}};
    j["initial"] = initial_name(cfg.initial);
    j["eps"] = cfg.eps;
    return j;
}

ScenarioConfig config_from_json(const json& j)
{
    try {
        ScenarioConfig cfg;
        cfg.name = j.at("name").get<std::string>();
        cfg.osc.omega1 = j.at("osc").at("omega1").get<double>();
        cfg.osc.omega2 = j.at("osc").at("omega2").get<double>();
        if (!j.at("bath").is_null()) {
            const auto& b = j.at("bath");
            const auto kind = b.at("kind").get<std::string>();
            if (kind != "Gaussian" && kind != "Poissonian") throw ParameterError("unknown bath kind " + kind);
            cfg.bath = BathSpec{kind == "Gaussian" ? BathKind::Gaussian : BathKind::Poissonian,
                                b.at("gamma1").get<double>(), b.at("gamma2").get<double>(),
                                b.at("phi").get<double>()};
        }
        const auto& in = j.at("interaction");
        const auto ikind = in.at("kind").get<std::string>();
        if (ikind != "BandLimited" && ikind != "Nonlinear") throw ParameterError("unknown interaction kind " + ikind);
        cfg.inter.kind = ikind == "BandLimited" ? InteractionKind::BandLimited : InteractionKind::Nonlinear;
        cfg.inter.gamma = in.at("gamma").get<double>();
        cfg.inter.r = in.at("r").get<int>();
        cfg.inter.s = in.at("s").get<int>();
        cfg.k_list = j.at("k_list").get<std::vector<int>>();
        cfg.grid.t_end = j.at("grid").at("t_end").get<double>();
        cfg.grid.samples = j.at("grid").at("samples").get<int>();
        cfg.grid.max_step = j.at("grid").at("max_step").get<double>();
        const auto init = j.at("initial").get<std::string>();
        if (init != "KZero" && init != "MaxCorrelated") throw ParameterError("unknown initial state " + init);
        cfg.initial = init == "KZero" ? InitialKind::KZero : InitialKind::MaxCorrelated;
        cfg.eps = j.value("eps", kDefaultRankEpsilon);
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw ParameterError(std::string("scenario JSON: ") + e.what());
    }
}

void write_run(const std::vector<CorrelationRecord>& records, const ScenarioConfig& cfg, int k,
               const fs::path& csv_path)
{
    json side = config_to_json(cfg);
    side["k"] = k;
    fs::path json_path = csv_path;
    json_path.replace_extension(".json");
    write_records(records, csv_path);
    write_text_atomic(json_path, side.dump(2) + "\n");
}

json fit_to_json(const ScenarioConfig& cfg, const ScalingFit& fit)
{
    return json{{"scenario", cfg.name},
                {"quantity", quantity_name(fit.quantity)},
                {"exponent", fit.exponent},
                {"exponent_stderr", fit.exponent_stderr},
                {"log_prefactor", fit.log_prefactor},
                {"k", fit.ks},
                {"amplitudes", fit.amplitudes}};
}

}  // namespace dephcorr

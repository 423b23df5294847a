// Copyright 2026 The qct developers

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qct/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "qct/feasibility.hpp"
#include "qct/oracle.hpp"
#include "qct/qubit_ot.hpp"

namespace qct::cli {

namespace {

using nlohmann::json;

constexpr double kLn2 = 0.6931471805599453094172321;
constexpr double kCurveGapLimit = 1e-4;

std::string fmt_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_exact(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Tiny ordered JSON emitter; key order is the call order.
class JsonWriter {
  public:
    JsonWriter &field(const char *k, double v) { return raw(k, fmt_num(v)); }
    JsonWriter &field(const char *k, int v) { return raw(k, std::to_string(v)); }
    JsonWriter &field(const char *k, bool v) { return raw(k, v ? "true" : "false"); }
    JsonWriter &field(const char *k, const std::string &v) { return raw(k, '"' + v + '"'); }
    JsonWriter &raw(const char *k, const std::string &body) {
        if (!first_) {
            out_ += ',';
        }
        first_ = false;
        out_ += '"';
        out_ += k;
        out_ += "\":";
        out_ += body;
        return *this;
    }
    std::string str() const { return out_ + "}"; }

  private:
    std::string out_ = "{";
    bool first_ = true;
};

std::string num_array(const std::vector<double> &vals) {
    std::string s = "[";
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += fmt_num(vals[i]);
    }
    return s + "]";
}

std::vector<double> linspace(double start, double stop, int count) {
    if (count < 1) {
        throw std::invalid_argument("grid: count must be at least 1");
    }
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(start);
        return out;
    }
    for (int i = 0; i < count; ++i) {
        out.push_back(start + (stop - start) * static_cast<double>(i) / (count - 1));
    }
    return out;
}

void validate_grid(const std::vector<double> &grid) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!(grid[i] > 0.0 && grid[i] <= 1.0)) {
            throw std::invalid_argument("grid: distortion values must lie in (0, 1]");
        }
        if (i > 0 && !(grid[i] > grid[i - 1])) {
            throw std::invalid_argument("grid: values must be strictly increasing");
        }
    }
}

cplx parse_complex(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw std::invalid_argument("matrix entries must be numbers or [re, im] pairs");
}

HermitianOp parse_matrix(const json &j, const char *what) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument(std::string(what) + ": expected a non-empty array of rows");
    }
    const int d = static_cast<int>(j.size());
    CMat m(d);
    for (int r = 0; r < d; ++r) {
        const json &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
            throw std::invalid_argument(std::string(what) + ": matrix must be square");
        }
        for (int c = 0; c < d; ++c) {
            m.at(r, c) = parse_complex(row[static_cast<std::size_t>(c)]);
        }
    }
    return HermitianOp(std::move(m));
}

std::string emit_matrix(const HermitianOp &h) {
    std::string s = "[";
    for (int r = 0; r < h.dim(); ++r) {
        if (r) {
            s += ',';
        }
        s += '[';
        for (int c = 0; c < h.dim(); ++c) {
            if (c) {
                s += ',';
            }
            const cplx v = h.at(r, c);
            s += '[';
            s += fmt_exact(v.real());
            s += ',';
            s += fmt_exact(v.imag());
            s += ']';
        }
        s += ']';
    }
    return s + "]";
}

QubitState state_of(const SystemConfig &cfg) {
    return QubitState(cfg.rho1, cplx{cfg.rho2_re, cfg.rho2_im});
}

struct Fig3Example {
    const char *name;
    double rho2_re;
    double rho2_im;
};

constexpr Fig3Example kFig3Examples[] = {
    {"ex1", 0.0, 0.0},
    {"ex2", 0.1319, -0.0361},
    {"ex3", 0.0754, -0.2307},
    {"ex4", -0.1399, -0.3872},
};

std::ofstream open_binary(const std::filesystem::path &p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot open " + p.string() + " for writing");
    }
    return f;
}

}  // namespace

SystemConfig parse_config_text(const std::string &json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!j.is_object()) {
        throw std::invalid_argument("config: expected a JSON object");
    }
    SystemConfig cfg;
    try {
        cfg.rho1 = j.at("rho1").get<double>();
        cfg.q0 = j.at("q0").get<double>();
        cfg.rho2_re = j.value("rho2_re", 0.0);
        cfg.rho2_im = j.value("rho2_im", 0.0);
        if (j.contains("base")) {
            const std::string base = j.at("base").get<std::string>();
            if (base == "nats") {
                cfg.nats = true;
            } else if (base != "bits") {
                throw std::invalid_argument("config: base must be \"bits\" or \"nats\"");
            }
        }
        cfg.verify = j.value("verify", false);
        if (j.contains("d_grid")) {
            const json &g = j.at("d_grid");
            if (g.is_array()) {
                for (const json &v : g) {
                    cfg.d_grid.push_back(v.get<double>());
                }
            } else if (g.is_object()) {
                cfg.d_grid = linspace(g.at("start").get<double>(), g.at("stop").get<double>(),
                                      g.at("count").get<int>());
            } else {
                throw std::invalid_argument("config: d_grid must be a list or {start,stop,count}");
            }
        }
    } catch (const json::exception &e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
    if (!(cfg.q0 >= 0.0 && cfg.q0 <= 1.0)) {
        throw std::invalid_argument("config: q0 outside [0, 1]");
    }
    const QubitState st = state_of(cfg);  // positivity / trace by construction
    if (!validate_density(st.to_op()).valid) {
        throw std::invalid_argument("config: state fails density validation");
    }
    validate_grid(cfg.d_grid);
    return cfg;
}

std::vector<double> parse_grid_spec(const std::string &spec) {
    double start = 0.0, stop = 0.0;
    int count = 0;
    char tail = '\0';
    if (std::sscanf(spec.c_str(), "%lf:%lf:%d%c", &start, &stop, &count, &tail) != 3) {
        throw std::invalid_argument("grid: expected start:stop:count");
    }
    std::vector<double> grid = linspace(start, stop, count);
    validate_grid(grid);
    return grid;
}

int cmd_curve(const SystemConfig &cfg, std::ostream &out, std::ostream &diag) {
    if (cfg.d_grid.empty()) {
        diag << "curve: a distortion grid is required\n";
        return kInputError;
    }
    const QubitState st = state_of(cfg);
    const rd::RDCurve cv = rd::curve(st, cfg.q0, cfg.d_grid);
    const double scale = cfg.nats ? kLn2 : 1.0;

    out << "D,R,n,s,branch,kkt_residual";
    if (cfg.verify) {
        out << ",R_oracle,abs_gap";
    }
    out << "\n";

    int code = kOk;
    for (const rd::RDPoint &p : cv.points) {
        const bool infeasible = p.branch == rd::Branch::infeasible;
        const double r_out = infeasible ? std::numeric_limits<double>::quiet_NaN()
                                        : p.R_bits * scale;
        out << fmt_num(p.D) << ',' << fmt_num(r_out) << ',' << fmt_num(p.n) << ',' << fmt_num(p.s)
            << ',' << rd::to_string(p.branch) << ',' << fmt_num(p.kkt_residual);
        if (cfg.verify) {
            double r_oracle = std::numeric_limits<double>::quiet_NaN();
            double gap = std::numeric_limits<double>::quiet_NaN();
            if (infeasible) {
                if (oracle::feasible_segment(st, cfg.q0, p.D)) {
                    diag << "curve: oracle disagrees on feasibility at D=" << fmt_num(p.D) << "\n";
                    code = kOracleMismatch;
                }
            } else {
                r_oracle = oracle::rate_bits(st, cfg.q0, p.D) * scale;
                gap = std::abs(r_out - r_oracle);
                if (gap > kCurveGapLimit) {
                    code = kOracleMismatch;
                }
            }
            out << ',' << fmt_num(r_oracle) << ',' << fmt_num(gap);
        }
        out << "\n";
    }
    return code;
}

int cmd_ot(const SystemConfig &cfg, std::ostream &out, std::ostream & /*diag*/) {
    const QubitState st = state_of(cfg);
    const ot::OTSolution sol = ot::optimal_transport(st, cfg.q0);
    const double scale = cfg.nats ? kLn2 : 1.0;

    JsonWriter w;
    w.field("schema", std::string("qct-ot-v1"));
    w.field("units", std::string(cfg.nats ? "nats" : "bits"));
    w.field("degenerate", sol.degenerate);
    if (sol.degenerate) {
        w.field("D_OT", sol.D_OT);
        w.field("R", 0.0);
        w.field("n", sol.n);
        w.field("s", sol.s);
        out << w.str() << "\n";
        return kOk;
    }
    w.field("D_OT", sol.D_OT);
    w.field("n", sol.n);
    w.field("s", sol.s);
    w.field("case", sol.case_id);
    w.field("Q", sol.Q);
    w.field("R_min_ot", ot::min_rate_ot(st, cfg.q0) * scale);

    int code = kOk;
    if (cfg.verify) {
        const oracle::GridMinimum g = oracle::grid_min_ot(st, cfg.q0, 2000);
        const double gap = std::abs(sol.D_OT - g.value);
        w.field("oracle_gap", gap);
        w.field("oracle_bound", g.accuracy_bound);
        if (gap > g.accuracy_bound) {
            code = kOracleMismatch;
        }
    }
    out << w.str() << "\n";
    return code;
}

int cmd_check(const std::string &system_json_text, std::ostream &out, std::ostream &diag) {
    json j;
    double d_limit = 0.0;
    std::optional<feasibility::QCSystem> sys;
    try {
        j = json::parse(system_json_text);
        if (!j.is_object()) {
            throw std::invalid_argument("system: expected a JSON object");
        }
        const HermitianOp rho = parse_matrix(j.at("rho"), "rho");
        if (!validate_density(rho).valid) {
            throw std::invalid_argument("system: rho fails density validation");
        }

        std::vector<HermitianOp> elements;
        for (const json &m : j.at("povm")) {
            elements.push_back(parse_matrix(m, "povm element"));
        }
        feasibility::Povm povm(std::move(elements));

        feasibility::Channel channel;
        for (const json &row : j.at("channel")) {
            channel.push_back(row.get<std::vector<double>>());
        }
        auto qx = j.at("qx").get<std::vector<double>>();
        d_limit = j.at("D").get<double>();

        std::vector<HermitianOp> delta_map;
        const json &dist = j.at("distortion");
        if (dist.is_string() && dist.get<std::string>() == "entanglement_fidelity") {
            delta_map = feasibility::entanglement_fidelity_map(rho);
        } else if (dist.is_object() && dist.contains("observables")) {
            for (const json &m : dist.at("observables")) {
                delta_map.push_back(parse_matrix(m, "distortion observable"));
            }
        } else {
            throw std::invalid_argument(
                "system: distortion must be \"entanglement_fidelity\" or {\"observables\": [...]}");
        }

        std::optional<double> eigmax;
        if (j.contains("delta_eigmax")) {
            eigmax = j.at("delta_eigmax").get<double>();
        }
        sys.emplace(rho, std::move(povm), std::move(channel), std::move(qx), std::move(delta_map),
                    eigmax);
    } catch (const json::exception &e) {
        diag << "check: " << e.what() << "\n";
        return kInputError;
    } catch (const std::exception &e) {
        diag << "check: " << e.what() << "\n";
        return kInputError;
    }

    const feasibility::FeasibilityReport rep = feasibility::check_feasible(*sys, d_limit);
    JsonWriter w;
    w.field("schema", std::string("qct-report-v1"));
    w.field("units", std::string("bits"));
    w.field("feasible", rep.feasible);
    w.field("I_WR_bits", rep.holevo_bits);
    w.field("I_WX_bits", rep.mutual_bits);
    w.field("marginal_gap", rep.marginal_gap);
    w.field("distortion", rep.distortion);
    w.field("cardinality_ok", rep.cardinality_ok);
    out << w.str() << "\n";
    return rep.feasible ? kOk : kInfeasible;
}

std::string system_json_from_point(const QubitState &rho, double q0, const rd::RDPoint &point) {
    const feasibility::Povm povm = rd::povm_at(rho, q0, point);
    std::string s = "{\"schema\":\"qct-system-v1\",\"rho\":";
    s += emit_matrix(rho.to_op());
    s += ",\"povm\":[";
    for (int w = 0; w < povm.size(); ++w) {
        if (w) {
            s += ',';
        }
        s += emit_matrix(povm.element(w));
    }
    s += "],\"channel\":[[1,0],[0,1]],\"qx\":[";
    s += fmt_exact(q0);
    s += ',';
    s += fmt_exact(1.0 - q0);
    s += "],\"D\":";
    s += fmt_exact(point.D);
    s += ",\"distortion\":\"entanglement_fidelity\"}";
    return s;
}

int cmd_fig3(const std::string &out_dir, std::ostream &diag) {
    namespace fs = std::filesystem;
    const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        diag << "fig3: cannot create " << dir.string() << ": " << ec.message() << "\n";
        return kInputError;
    }

    constexpr double kQ0 = 0.5;
    std::vector<QubitState> states;
    for (const Fig3Example &ex : kFig3Examples) {
        states.emplace_back(0.5, cplx{ex.rho2_re, ex.rho2_im});
    }

    std::vector<double> purities, d_ots, d_r0s;
    double grid_lo = 0.0;
    double grid_hi = 0.0;
    for (const QubitState &st : states) {
        purities.push_back(purity(st.to_op()));
        d_ots.push_back(ot::optimal_transport(st, kQ0).D_OT);
        d_r0s.push_back(rd::zero_crossing(st, kQ0));
        grid_lo = std::max(grid_lo, d_ots.back());
        grid_hi = std::max(grid_hi, d_r0s.back());
    }
    const std::vector<double> grid = linspace(grid_lo + 1e-3, grid_hi, 50);

    std::vector<rd::RDCurve> curves;
    for (std::size_t i = 0; i < states.size(); ++i) {
        curves.push_back(rd::curve(states[i], kQ0, grid));
        std::ofstream f = open_binary(dir / (std::string(kFig3Examples[i].name) + ".csv"));
        f << "D,R,n,s,branch,kkt_residual\n";
        for (const rd::RDPoint &p : curves.back().points) {
            f << fmt_num(p.D) << ',' << fmt_num(p.R_bits) << ',' << fmt_num(p.n) << ','
              << fmt_num(p.s) << ',' << rd::to_string(p.branch) << ',' << fmt_num(p.kkt_residual)
              << "\n";
        }
    }

    // purer source => lower rate at every shared distortion level
    double max_violation = 0.0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        for (std::size_t i = 0; i + 1 < curves.size(); ++i) {
            const double hi = curves[i].points[g].R_bits;
            const double lo = curves[i + 1].points[g].R_bits;
            if (std::isfinite(hi) && std::isfinite(lo)) {
                max_violation = std::max(max_violation, lo - hi);
            }
        }
    }
    const bool ordering_ok = max_violation <= 1e-9;

    JsonWriter w;
    w.field("schema", std::string("qct-fig3-v1"));
    w.field("units", std::string("bits"));
    w.raw("purity", num_array(purities));
    w.raw("d_ot", num_array(d_ots));
    w.raw("d_r0", num_array(d_r0s));
    w.field("ordering_ok", ordering_ok);
    w.field("max_ordering_violation", max_violation);
    {
        std::ofstream f = open_binary(dir / "summary.json");
        f << w.str() << "\n";
    }
    return kOk;
}

int run(int argc, const char *const *argv) {
    CLI::App app{"qct: transport and rate-distortion analysis for measurement systems"};
    app.require_subcommand(1);

    std::string config_path, config_inline, out_dir, grid_spec, system_path;
    bool verify = false;
    bool nats = false;

    auto add_config_opts = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "configuration JSON file");
        sub->add_option("--json", config_inline, "inline configuration JSON");
        sub->add_option("--out", out_dir, "output directory (default: stdout)");
        sub->add_flag("--verify", verify, "cross-check against the brute-force oracle");
        sub->add_flag("--nats", nats, "report rates in nats instead of bits");
    };

    CLI::App *curve = app.add_subcommand("curve", "rate-distortion sweep over a distortion grid");
    add_config_opts(curve);
    curve->add_option("--grid", grid_spec, "distortion grid start:stop:count");

    CLI::App *otc = app.add_subcommand("ot", "minimum transportation cost");
    add_config_opts(otc);

    CLI::App *check = app.add_subcommand("check", "feasibility report for a system file");
    check->add_option("system", system_path, "system description JSON file")->required();

    CLI::App *fig3 = app.add_subcommand("fig3", "built-in example sweep");
    fig3->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }

    auto read_file = [](const std::string &path) {
        std::ifstream f(path, std::ios::binary);
        if (!f) {
            throw std::invalid_argument("cannot read " + path);
        }
        std::ostringstream ss;
        ss << f.rdbuf();
        return ss.str();
    };

    try {
        if (curve->parsed() || otc->parsed()) {
            std::string text;
            if (!config_path.empty()) {
                text = read_file(config_path);
            } else if (!config_inline.empty()) {
                text = config_inline;
            } else {
                std::cerr << "a configuration is required (--config or --json)\n";
                return kInputError;
            }
            SystemConfig cfg = parse_config_text(text);
            cfg.verify = cfg.verify || verify;
            cfg.nats = cfg.nats || nats;
            if (!grid_spec.empty()) {
                cfg.d_grid = parse_grid_spec(grid_spec);
            }
            if (curve->parsed()) {
                if (!out_dir.empty()) {
                    std::filesystem::create_directories(out_dir);
                    std::ofstream f = open_binary(std::filesystem::path(out_dir) / "curve.csv");
                    return cmd_curve(cfg, f, std::cerr);
                }
                return cmd_curve(cfg, std::cout, std::cerr);
            }
            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                std::ofstream f = open_binary(std::filesystem::path(out_dir) / "ot.json");
                return cmd_ot(cfg, f, std::cerr);
            }
            return cmd_ot(cfg, std::cout, std::cerr);
        }
        if (check->parsed()) {
            return cmd_check(read_file(system_path), std::cout, std::cerr);
        }
        if (fig3->parsed()) {
            return cmd_fig3(out_dir, std::cerr);
        }
    } catch (const std::invalid_argument &e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const std::domain_error &e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace qct::cli

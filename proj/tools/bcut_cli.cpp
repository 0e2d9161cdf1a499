#include <bcut/bcut.hpp>

#include "CLI11.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum Exit { ok = 0, validation_failed = 1, usage_error = 2, numerical_failure = 3 };

struct RunConfig {
    std::string command;
    std::string spec_path;
    std::vector<int> N{40};
    std::string u_grid = "0.1:3:0.1";
    std::string t_grid = "-1e-3,-1e-4,-1e-5,1e-5,1e-4,1e-3";
    std::string y_grid = "-3:3:0.5";
    int nu = 1;
    double phi_e = 1.0;
    int bits = 320;
    int k_max = 40;
    int nodes = 6000;
    double u = 1.3;
    bool block = false;
    std::string out;
};

struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "A:B:STEP", endpoints inclusive
std::vector<double> parse_range(const std::string& s) {
    std::vector<double> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ':')) {
        try {
            std::size_t pos = 0;
            parts.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw usage_failure("bad grid '" + s + "': '" + item + "' is not a number");
        }
    }
    if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
        throw usage_failure("grid '" + s + "' must be A:B:STEP with A <= B and STEP > 0");
    std::vector<double> g;
    int n = static_cast<int>(std::floor((parts[1] - parts[0]) / parts[2] + 1e-9));
    for (int i = 0; i <= n; ++i) g.push_back(parts[0] + parts[2] * i);
    return g;
}

// comma list of values, or a range
std::vector<double> parse_list(const std::string& s) {
    if (s.find(':') != std::string::npos) return parse_range(s);
    std::vector<double> g;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            g.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw usage_failure("bad list '" + s + "': '" + item + "' is not a number");
        }
    }
    if (g.empty()) throw usage_failure("empty list");
    return g;
}

template <class R>
bcut::CriticalSpec<R> load_spec(const RunConfig& cfg) {
    if (!cfg.spec_path.empty()) return bcut::read_spec<R>(cfg.spec_path);
    if (cfg.nu < 1) throw usage_failure("--nu must be >= 1");
    if (!(cfg.phi_e > 0)) throw usage_failure("--phi-e must be positive");
    using std::cosh;
    return bcut::make_critical_spec<R>(cfg.nu, R(2) * cosh(R(cfg.phi_e)), bcut::Poly<R>::constant(R(1)));
}

class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw std::ios_base::failure("cannot write '" + path + "'");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

template <class R>
int cmd_validate(const RunConfig& cfg) {
    auto s = load_spec<R>(cfg);
    auto rep = bcut::validate_critical(s);
    for (const auto& c : rep.checks)
        std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << "  value=" << c.value
                  << (c.detail.empty() ? "" : "  " + c.detail) << "\n";
    if (!cfg.out.empty()) {
        Output o(cfg.out);
        bcut::write_spec(o.os(), s);
    }
    std::cout << (rep.all_passed() ? "spec valid" : "spec INVALID") << "\n";
    return rep.all_passed() ? ok : validation_failed;
}

template <class R>
int cmd_critical(const RunConfig& cfg) {
    auto s = load_spec<R>(cfg);
    Output o(cfg.out);
    bcut::CsvWriter w(o.os(), {"t_over_Tc", "a", "b", "gamma_n", "beta_n", "c", "d", "zeta", "delta_x0", "m", "tau",
                               "epsilon", "d2F_dt2"});
    for (double r : parse_list(cfg.t_grid)) {
        if (r == 0) continue;
        R t = R(r) * s.Tc;
        R curv = bcut::transition_curvature(s, t);
        if (t < 0) {
            auto d = bcut::one_cut_drift(s, t);
            w.row(r, d.a, d.b, d.gamma_n, d.beta_n, "", "", "", "", "", "", "", curv);
        } else {
            auto n = bcut::newborn_scaling(s, t);
            w.row(r, "", "", "", "", n.c, n.d, n.zeta, n.delta_x0, n.m_asym, n.tau_asym, n.epsilon, curv);
        }
    }
    return ok;
}

template <class R>
int cmd_equilibrium(const RunConfig& cfg) {
    auto s = load_spec<R>(cfg);
    Output o(cfg.out);
    auto ts = parse_list(cfg.t_grid);
    auto solve = [&](double r) {
        R t = R(r) * s.Tc;
        if (r <= 0) {
            std::array<R, 2> g{R(-2), R(2)};
            if (r < 0) {
                auto d = bcut::one_cut_drift(s, t);
                g = {d.a, d.b};
            }
            return bcut::solve_one_cut(s.V, R(s.Tc + t), g);
        }
        auto n = bcut::newborn_scaling(s, t);
        return bcut::solve_two_cut(s.V, R(s.Tc + t), {R(-2), R(2), n.c, n.d});
    };
    if (cfg.block) {
        if (ts.size() != 1) throw usage_failure("--block needs exactly one t value");
        bcut::write_measure(o.os(), solve(ts[0]));
        return ok;
    }
    bcut::CsvWriter w(o.os(), {"t_over_Tc", "s", "a", "b", "c", "d", "x0", "m", "gamma", "dF_dT", "d2F_dT2",
                               "dcalT_dT", "iterations"});
    int failures = 0;
    for (double r : ts) {
        try {
            auto mu = solve(r);
            auto th = bcut::thermo_derivatives(mu);
            R g = bcut::abelian_objects(mu).gamma;
            if (mu.s == 1)
                w.row(r, 1, mu.ends[0], mu.ends[1], "", "", "", "", g, th.dF_dT, th.d2F_dT2, th.dcalT_dT, mu.iterations);
            else
                w.row(r, 2, mu.ends[0], mu.ends[1], mu.ends[2], mu.ends[3], mu.x0, mu.m, g, th.dF_dT, th.d2F_dT2,
                      th.dcalT_dT, mu.iterations);
        } catch (const std::exception& e) {
            ++failures;
            w.row(r, "error", "", "", "", "", "", "", "", "", "", "", "");
            std::cerr << "t/Tc=" << r << ": " << e.what() << "\n";
        }
    }
    return failures ? numerical_failure : ok;
}

template <class R>
int cmd_chain(const RunConfig& cfg) {
    auto s = load_spec<R>(cfg);
    auto ch = bcut::build_chain<R>(s.nu, cfg.k_max, bcut::A_constant(s));
    Output o(cfg.out);
    bcut::write_chain_table(o.os(), ch);
    return ok;
}

template <class R>
int cmd_scan_u(const RunConfig& cfg, bool summary_only) {
    auto s = load_spec<R>(cfg);
    auto us = parse_range(cfg.u_grid);
    for (int N : cfg.N)
        if (N < 3) throw usage_failure("--N values must be >= 3");
    double u_max = 0;
    for (double u : us) u_max = std::max(u_max, u);
    auto ch = bcut::chain_for(s, u_max);
    Output o(cfg.out);
    std::unique_ptr<bcut::CsvWriter> w;
    if (summary_only)
        w = std::make_unique<bcut::CsvWriter>(
            o.os(), std::vector<std::string>{"N", "points", "valid_points", "max_rel_err_gamma", "max_rel_err_beta",
                                             "gamma_minima_u"});
    else
        w = std::make_unique<bcut::CsvWriter>(
            o.os(), std::vector<std::string>{"N", "n", "p", "u", "ubar", "eps_u", "valid", "gamma_oracle",
                                             "gamma_reduced", "gamma_full", "beta_oracle", "beta_reduced", "beta_full",
                                             "rel_err_gamma", "rel_err_beta"});
    int failures = 0;
    for (int N0 : cfg.N) {
        std::vector<bcut::ScanRow<R>> rows;
        for (double u : us) {
            try {
                rows.push_back(bcut::scan_point(s, ch, N0, R(u), cfg.nodes));
            } catch (const std::exception& e) {
                ++failures;
                std::cerr << "N=" << N0 << " u=" << u << ": " << e.what() << "\n";
                if (!summary_only) w->row(N0, "error", "", u, "", "", "", "", "", "", "", "", "", "", "");
                break;
            }
            if (!summary_only) {
                const auto& r = rows.back();
                w->row(r.N, r.n, r.p, r.u, r.ubar, r.eps_u, r.valid, r.gamma_oracle, r.gamma_reduced, r.gamma_full,
                       r.beta_oracle, r.beta_reduced, r.beta_full, r.rel_err_gamma, r.rel_err_beta);
            }
        }
        if (summary_only) {
            double eg = 0, eb = 0;
            int valid = 0;
            std::string minima;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].valid) {
                    ++valid;
                    eg = std::max(eg, bcut::to_double(rows[i].rel_err_gamma));
                    eb = std::max(eb, bcut::to_double(rows[i].rel_err_beta));
                }
                if (i > 0 && i + 1 < rows.size() && rows[i].gamma_oracle < rows[i - 1].gamma_oracle &&
                    rows[i].gamma_oracle < rows[i + 1].gamma_oracle) {
                    if (!minima.empty()) minima += ' ';
                    minima += bcut::CsvWriter::cell(bcut::to_double(rows[i].u));
                }
            }
            w->row(N0, static_cast<int>(rows.size()), valid, eg, eb, minima);
        }
    }
    return failures ? numerical_failure : ok;
}

template <class R>
int cmd_psi(const RunConfig& cfg) {
    auto s = load_spec<R>(cfg);
    int N0 = cfg.N.front();
    auto up = bcut::continuous_u_point(s, N0, R(cfg.u));
    auto rc = bcut::build_rec_chain(s.V, up.N, s.Tc, up.n + 2, cfg.nodes);
    auto ch = bcut::chain_for(s, cfg.u);
    auto rp = bcut::make_regime(s, up.N, up.p);
    auto sm = bcut::make_scaling(s, up.N);
    if (!rp.valid_psi) std::cerr << "warning: u = " << cfg.u << " is outside the psi validity range\n";
    Output o(cfg.out);
    bcut::CsvWriter w(o.os(), {"y", "x", "psi_n_oracle", "psi_n_reduced", "psi_n_full", "psi_nm1_oracle",
                               "psi_nm1_reduced", "psi_nm1_full", "phi_n_oracle", "phi_n_reduced", "phi_n_full"});
    for (double y : parse_range(cfg.y_grid)) {
        R x = sm.x_of_y(R(y));
        auto red = bcut::Psi_matrix(s, ch, rp, R(y));
        auto full = bcut::Psi_full(s, ch, rp, R(y));
        std::vector<R> ps;
        bcut::eval_psi_all(rc, up.n, x, ps);
        auto phi = bcut::eval_phi_exact(rc, up.n, x);
        w.row(R(y), x, ps[up.n], red[1][0], full[1][0], ps[up.n - 1], red[0][0], full[0][0], phi.value, red[1][1],
              full[1][1]);
    }
    return ok;
}

template <class R>
int cmd_transition(const RunConfig& cfg) {
    auto s = load_spec<R>(cfg);
    Output o(cfg.out);
    bcut::CsvWriter w(o.os(), {"t_over_Tc", "t", "d2F_dt2_solver", "d2F_dt2_formula", "status"});
    int failures = 0;
    for (double r : parse_list(cfg.t_grid)) {
        if (r == 0) continue;
        R t = R(r) * s.Tc;
        try {
            auto tr = bcut::transition_point(s, t);
            w.row(r, t, tr.solver, tr.formula, "ok");
        } catch (const std::exception& e) {
            ++failures;
            w.row(r, t, "", bcut::transition_curvature(s, t), "solver-failed");
            std::cerr << "t/Tc=" << r << ": " << e.what() << "\n";
        }
    }
    return failures ? numerical_failure : ok;
}

template <class R>
int dispatch(const RunConfig& cfg) {
    const auto& c = cfg.command;
    if (c == "validate") return cmd_validate<R>(cfg);
    if (c == "critical") return cmd_critical<R>(cfg);
    if (c == "equilibrium") return cmd_equilibrium<R>(cfg);
    if (c == "chain") return cmd_chain<R>(cfg);
    if (c == "scan-u") return cmd_scan_u<R>(cfg, false);
    if (c == "compare") return cmd_scan_u<R>(cfg, true);
    if (c == "psi") return cmd_psi<R>(cfg);
    if (c == "transition") return cmd_transition<R>(cfg);
    throw usage_failure("unknown command '" + c + "'");
}

int run(const RunConfig& cfg) {
    switch (cfg.bits) {
    case 128: return dispatch<bcut::real128>(cfg);
    case 256: return dispatch<bcut::real256>(cfg);
    case 320: return dispatch<bcut::real320>(cfg);
    case 512: return dispatch<bcut::real512>(cfg);
    default: throw usage_failure("--bits must be one of 128, 256, 320, 512");
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Birth-of-a-cut numerics: critical potentials, equilibrium measures, model chains and oracles"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--spec", cfg.spec_path, "critical spec file (key = value)")->check(CLI::ExistingFile);
        sub->add_option("--nu", cfg.nu, "order of the critical point when no spec file is given");
        sub->add_option("--phi-e", cfg.phi_e, "phi_e (e = 2 cosh phi_e) when no spec file is given");
        sub->add_option("--bits", cfg.bits, "working precision: 128, 256, 320 or 512");
        sub->add_option("--out", cfg.out, "output path (default stdout)");
    };
    auto scan_opts = [&](CLI::App* sub) {
        sub->add_option("--N", cfg.N, "list of N values")->delimiter(',');
        sub->add_option("--u-grid", cfg.u_grid, "u grid A:B:STEP");
        sub->add_option("--nodes", cfg.nodes, "oracle quadrature nodes");
    };
    auto t_opts = [&](CLI::App* sub) {
        sub->add_option("--t-grid", cfg.t_grid, "t/Tc values: comma list or A:B:STEP");
    };

    auto* v = app.add_subcommand("validate", "check the critical-potential conditions (exit 1 on failure)");
    common(v);
    auto* cr = app.add_subcommand("critical", "near-critical expansions over a t grid");
    common(cr);
    t_opts(cr);
    auto* eq = app.add_subcommand("equilibrium", "solve one- or two-cut equilibrium measures over a t grid");
    common(eq);
    t_opts(eq);
    eq->add_flag("--block", cfg.block, "emit a key = value measure block for a single t");
    auto* chn = app.add_subcommand("chain", "x^(2nu)/(2nu) model chain table");
    common(chn);
    chn->add_option("--k-max", cfg.k_max, "largest k");
    auto* su = app.add_subcommand("scan-u", "oracle vs asymptotic recurrence coefficients over a u grid");
    common(su);
    scan_opts(su);
    auto* cmp = app.add_subcommand("compare", "per-N summary of the scan-u comparison");
    common(cmp);
    scan_opts(cmp);
    auto* ps = app.add_subcommand("psi", "oracle vs reduced and full-sum wavefunctions near e");
    common(ps);
    ps->add_option("--N", cfg.N, "N")->delimiter(',');
    ps->add_option("--u", cfg.u, "scaling variable u");
    ps->add_option("--y-grid", cfg.y_grid, "y grid A:B:STEP");
    ps->add_option("--nodes", cfg.nodes, "oracle quadrature nodes");
    auto* tr = app.add_subcommand("transition", "second derivative of F across the transition");
    common(tr);
    t_opts(tr);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage_error;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        return run(cfg);
    } catch (const usage_failure& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return usage_error;
    } catch (const bcut::parse_error& e) {
        std::cerr << "spec error: " << e.what() << "\n";
        return usage_error;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return usage_error;
    } catch (const bcut::numerical_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const bcut::domain_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return numerical_failure;
    }
}

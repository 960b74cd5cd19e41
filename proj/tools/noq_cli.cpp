// noq -- command-line front end: compute measures on serialized states,
// generate family states, sweep family parameters, verify invariants.
//
// Exit codes: 0 success, 1 malformed JSON input, 2 invalid state or
// parameters, 3 verification failure.

#include "noq/activation.hpp"
#include "noq/channels.hpp"
#include "noq/io.hpp"
#include "noq/measures.hpp"
#include "noq/optimizer.hpp"
#include "noq/states.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace noq;

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

long env_max_evals() {
    const char* s = std::getenv("NOQ_MAX_EVALS");
    if (!s) return 0;
    char* end = nullptr;
    const long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v <= 0)
        throw std::invalid_argument("NOQ_MAX_EVALS must be a positive integer");
    return v;
}

OptimizerConfig apply_env(OptimizerConfig config) {
    const long cap = env_max_evals();
    if (cap > 0) config.max_evaluations = std::min(config.max_evaluations, cap);
    return config;
}

MeasureReport compute_measure(const DensityMatrix& rho,
                              const std::string& measure,
                              const OptimizerConfig& config) {
    if (measure == "negativity") {
        MeasureReport rep;
        rep.measure = "negativity";
        rep.method = "closed-form";
        rep.value = negativity(rho);
        return rep;
    }
    if (measure == "noq-a") return noq_one_sided(rho, Side::A, config);
    if (measure == "noq-b") return noq_one_sided(rho, Side::B, config);
    if (measure == "noq-ab") return noq_two_sided(rho, config);
    if (measure == "trace-distance-discord")
        return trace_distance_discord(rho, config);
    if (measure == "geometric-discord") return geometric_discord(rho, config);
    if (measure == "deficit-a") return deficit(rho, DeficitSides::A, config);
    if (measure == "deficit-ab") return deficit(rho, DeficitSides::AB, config);
    throw std::invalid_argument("unknown measure: " + measure);
}

DensityMatrix family_state(const std::string& family, Eigen::Index d,
                           double beta, double lambda,
                           const std::array<double, 4>& p, double gamma) {
    if (family == "werner") return werner(d, beta);
    if (family == "isotropic") return isotropic(d, lambda);
    if (family == "bell-diagonal") return bell_diagonal(p);
    if (family == "amplitude-damping")
        return channel_to_state(amplitude_damping(gamma));
    throw std::invalid_argument("unknown family: " + family);
}

int run_verify(const DensityMatrix& rho, const OptimizerConfig& config) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name,
                     const std::string& detail) {
        std::cout << (ok ? "[ok]   " : "[FAIL] ") << name << ": " << detail
                  << "\n";
        if (!ok) ++failures;
    };

    const Matrix pt = partial_transpose(rho.rho, rho.cut, Side::B);
    const Matrix ptpt = partial_transpose(pt, rho.cut, Side::B);
    check((ptpt - rho.rho).cwiseAbs().maxCoeff() < 1e-12,
          "partial-transpose-involution",
          "applying the partial transpose twice restores the state");
    check(std::abs(pt.trace().real() - 1.0) < 1e-12, "partial-transpose-trace",
          "trace preserved, got " + fmt(pt.trace().real()));

    const double neg = negativity(rho);
    check(neg >= -1e-12, "negativity-nonnegative", fmt(neg));

    const MeasureReport one = noq_one_sided(rho, Side::A, config);
    const MeasureReport two = noq_two_sided(rho, config);
    check(neg <= one.value + 1e-5,
          "hierarchy-negativity-vs-one-sided",
          fmt(neg) + " <= " + fmt(one.value) + " + 1e-5");
    check(one.value <= two.value + 1e-5, "hierarchy-one-vs-two-sided",
          fmt(one.value) + " <= " + fmt(two.value) + " + 1e-5");
    check(neg <= two.value + 1e-8, "l1-bound-on-negativity",
          fmt(neg) + " <= " + fmt(two.value) + " + 1e-8");

    Rng rng(config.seed + 7);
    double worst_gap = 0.0;
    for (int k = 0; k < 5; ++k) {
        const Matrix u = haar_unitary(rho.cut.dim(), rng);
        worst_gap = std::max(worst_gap,
                             trace_norm(rho.rho) - l1_norm_in_basis(rho.rho, u));
    }
    check(worst_gap <= 1e-9, "l1-dominates-trace-norm",
          "max(||.||_1 - l1 in basis) = " + fmt(worst_gap));

    if (rho.cut.dim_a == 2) {
        const MeasureReport tdd = trace_distance_discord(rho, config);
        check(std::abs(tdd.value - one.value) <= 1e-5,
              "qubit-discord-equivalence",
              fmt(tdd.value) + " vs " + fmt(one.value));
        bool ru_ok = true;
        std::string ru_detail = "reflection identity holds at sampled bases";
        for (int k = 0; k < 3 && ru_ok; ++k) {
            try {
                ru_disturbance(rho, haar_unitary(2, rng));
            } catch (const std::logic_error& e) {
                ru_ok = false;
                ru_detail = e.what();
            }
        }
        check(ru_ok, "reflection-disturbance-identity", ru_detail);
    }
    return failures == 0 ? 0 : 3;
}

struct SweepPoint {
    double x;
    DensityMatrix state;
};

std::vector<SweepPoint> sweep_points(const Json& spec) {
    const std::string family = spec.at("family").get<std::string>();
    const std::string param = spec.at("param").get<std::string>();
    const double from = spec.at("from").get<double>();
    const double to = spec.at("to").get<double>();
    const double step = spec.at("step").get<double>();
    if (step <= 0.0 || to < from)
        throw std::invalid_argument("sweep: need step > 0 and to >= from");
    const Json fixed = spec.value("fixed", Json::object());

    std::vector<SweepPoint> points;
    for (double x = from; x <= to + 0.5 * step; x += step) {
        const double clamped = std::min(x, to);
        if (family == "werner" || family == "isotropic") {
            const Eigen::Index d = spec.at("d").get<Eigen::Index>();
            if ((family == "werner" && param != "beta") ||
                (family == "isotropic" && param != "lambda"))
                throw std::invalid_argument("sweep: unknown parameter " + param);
            points.push_back(
                {clamped, family == "werner" ? werner(d, clamped)
                                             : isotropic(d, clamped)});
        } else if (family == "bell-diagonal") {
            double r[3] = {fixed.value("r11", 0.0), fixed.value("r22", 0.0),
                           fixed.value("r33", 0.0)};
            if (param == "r11") r[0] = clamped;
            else if (param == "r22") r[1] = clamped;
            else if (param == "r33") r[2] = clamped;
            else throw std::invalid_argument("sweep: unknown parameter " + param);
            points.push_back({clamped, bell_diagonal_from_r(r[0], r[1], r[2])});
        } else if (family == "amplitude-damping") {
            if (param != "gamma")
                throw std::invalid_argument("sweep: unknown parameter " + param);
            points.push_back(
                {clamped, channel_to_state(amplitude_damping(clamped))});
        } else {
            throw std::invalid_argument("sweep: unknown family " + family);
        }
    }
    return points;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"negativity-of-quantumness toolkit"};
    app.require_subcommand(1);

    std::string in_path, out_format = "json", measure = "noq-a";
    OptimizerConfig config;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--restarts", config.restarts, "optimizer restarts");
        cmd->add_option("--seed", config.seed, "optimizer seed");
        cmd->add_option("--tol", config.convergence_tol,
                        "optimizer convergence tolerance");
        cmd->add_option("--grid", config.qubit_grid_resolution,
                        "qubit grid resolution");
        cmd->add_option("--out", out_format, "output format: json|csv");
    };

    CLI::App* compute = app.add_subcommand("compute", "compute one measure");
    compute->add_option("--in", in_path, "state JSON file")->required();
    compute->add_option("--measure", measure,
                        "negativity|noq-a|noq-b|noq-ab|trace-distance-discord|"
                        "geometric-discord|deficit-a|deficit-ab");
    add_common(compute);

    std::string family = "werner";
    Eigen::Index fam_d = 2;
    double beta = 0.0, lambda = 1.0, gamma = 0.0;
    std::array<double, 4> bell_p{1.0, 0.0, 0.0, 0.0};
    CLI::App* fam = app.add_subcommand("family", "emit a family state as JSON");
    fam->add_option("--family", family,
                    "werner|isotropic|bell-diagonal|amplitude-damping")
        ->required();
    fam->add_option("--d", fam_d, "local dimension (werner/isotropic)");
    fam->add_option("--beta", beta, "werner parameter");
    fam->add_option("--lambda", lambda, "isotropic parameter");
    fam->add_option("--p0", bell_p[0], "bell-diagonal probability");
    fam->add_option("--p1", bell_p[1], "bell-diagonal probability");
    fam->add_option("--p2", bell_p[2], "bell-diagonal probability");
    fam->add_option("--p3", bell_p[3], "bell-diagonal probability");
    fam->add_option("--gamma", gamma, "amplitude damping probability");

    std::string spec_path;
    CLI::App* sweep = app.add_subcommand("sweep", "sweep a family parameter");
    sweep->add_option("--spec", spec_path, "sweep spec JSON file")->required();
    add_common(sweep);

    CLI::App* verify =
        app.add_subcommand("verify", "run the invariant suite on a state");
    verify->add_option("--in", in_path, "state JSON file")->required();
    add_common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        config = apply_env(config);

        if (compute->parsed()) {
            const DensityMatrix rho =
                state_from_json(Json::parse(read_file(in_path)));
            const MeasureReport rep = compute_measure(rho, measure, config);
            if (!rep.warning.empty())
                std::cerr << "warning: " << rep.warning << "\n";
            if (out_format == "csv") {
                std::cout << "measure,value,method\n"
                          << rep.measure << "," << fmt(rep.value) << ","
                          << rep.method << "\n";
            } else {
                std::cout << report_to_json(rep).dump(2) << "\n";
            }
            return 0;
        }

        if (fam->parsed()) {
            const DensityMatrix rho =
                family_state(family, fam_d, beta, lambda, bell_p, gamma);
            std::cout << state_to_json(rho).dump(2) << "\n";
            return 0;
        }

        if (sweep->parsed()) {
            // tables default to csv; --out json switches to an array of rows
            if (sweep->get_option("--out")->count() == 0) out_format = "csv";
            const Json spec = Json::parse(read_file(spec_path));
            const auto points = sweep_points(spec);
            std::vector<std::string> measures;
            for (const auto& m : spec.at("measures"))
                measures.push_back(m.get<std::string>());
            if (measures.empty())
                throw std::invalid_argument("sweep: no measures requested");
            if (out_format == "csv") {
                std::cout << spec.at("param").get<std::string>();
                for (const auto& m : measures) std::cout << "," << m;
                std::cout << "\n";
                for (const auto& pt : points) {
                    std::cout << fmt(pt.x);
                    for (const auto& m : measures)
                        std::cout << ","
                                  << fmt(compute_measure(pt.state, m, config)
                                             .value);
                    std::cout << "\n";
                }
            } else {
                Json rows = Json::array();
                for (const auto& pt : points) {
                    Json row{{spec.at("param").get<std::string>(), pt.x}};
                    for (const auto& m : measures)
                        row[m] = compute_measure(pt.state, m, config).value;
                    rows.push_back(row);
                }
                std::cout << rows.dump(2) << "\n";
            }
            return 0;
        }

        if (verify->parsed()) {
            const DensityMatrix rho =
                state_from_json(Json::parse(read_file(in_path)));
            return run_verify(rho, config);
        }
    } catch (const Json::exception& e) {
        std::cerr << "error: malformed JSON: " << e.what() << "\n";
        return 1;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "noq/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace noq {

namespace {

constexpr double kPi = 3.14159265358979323846;

int prime_at(int i) {
    static const int primes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29,
                                 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
                                 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
    return primes[i % 30];
}

// radical-inverse low-discrepancy point, component i of point `index`
double halton(long index, int base) {
    double f = 1.0, r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * (index % base);
        index /= base;
    }
    return r;
}

Matrix qubit_basis(double theta, double phi) {
    const Complex e(std::cos(phi), std::sin(phi));
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    Matrix u(2, 2);
    u(0, 0) = c;
    u(1, 0) = s * e;
    u(0, 1) = -s * std::conj(e);
    u(1, 1) = c;
    return u;
}

struct NmOutcome {
    double value = 0.0;
    std::vector<double> x;
    bool converged = false;
};

// classic downhill simplex; budget is a hard cap on function evaluations
NmOutcome nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                      const std::vector<double>& x0,
                      const std::vector<double>& steps, double tol,
                      long budget, long& evals) {
    const size_t n = x0.size();
    struct Vertex {
        std::vector<double> x;
        double fx;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    long used = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++used;
        ++evals;
        return f(x);
    };
    simplex.push_back({x0, eval(x0)});
    for (size_t i = 0; i < n && used < budget; ++i) {
        std::vector<double> x = x0;
        x[i] += steps[i];
        simplex.push_back({x, eval(x)});
    }
    auto by_value = [](const Vertex& a, const Vertex& b) { return a.fx < b.fx; };
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    if (simplex.size() < n + 1)  // budget exhausted while seeding
        return {simplex.front().fx, simplex.front().x, false};

    NmOutcome out;
    while (true) {
        std::stable_sort(simplex.begin(), simplex.end(), by_value);
        if (simplex.back().fx - simplex.front().fx < tol) {
            out.converged = true;
            break;
        }
        if (used >= budget) break;

        std::vector<double> centroid(n, 0.0);
        for (size_t v = 0; v < n; ++v)
            for (size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / n;
        const Vertex& worst = simplex.back();
        auto blend = [&](double coeff) {
            std::vector<double> x(n);
            for (size_t i = 0; i < n; ++i)
                x[i] = centroid[i] + coeff * (centroid[i] - worst.x[i]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double fr = eval(xr);
        if (fr < simplex.front().fx) {
            if (used < budget) {
                std::vector<double> xe = blend(2.0);
                const double fe = eval(xe);
                if (fe < fr)
                    simplex.back() = {xe, fe};
                else
                    simplex.back() = {xr, fr};
            } else {
                simplex.back() = {xr, fr};
            }
        } else if (fr < simplex[n - 1].fx) {
            simplex.back() = {xr, fr};
        } else if (used < budget) {
            const bool outside = fr < worst.fx;
            std::vector<double> xc = blend(outside ? 0.5 : -0.5);
            const double fc = eval(xc);
            if (fc < std::min(fr, worst.fx)) {
                simplex.back() = {xc, fc};
            } else {
                // shrink toward the best vertex
                for (size_t v = 1; v < simplex.size() && used < budget; ++v) {
                    for (size_t i = 0; i < n; ++i)
                        simplex[v].x[i] =
                            0.5 * (simplex[v].x[i] + simplex[0].x[i]);
                    simplex[v].fx = eval(simplex[v].x);
                }
            }
        } else {
            break;
        }
    }
    std::stable_sort(simplex.begin(), simplex.end(), by_value);
    out.value = simplex.front().fx;
    out.x = simplex.front().x;
    return out;
}

}  // namespace

BasisParametrization::BasisParametrization(Eigen::Index dim) : dim_(dim) {
    if (dim < 2)
        throw std::invalid_argument("BasisParametrization: dim must be >= 2");
    if (dim == 2) {
        planes_.emplace_back(0, 1);
        return;
    }
    // QR-elimination order: one plane per zeroed subdiagonal entry
    for (int c = 0; c < dim - 1; ++c)
        for (int r = int(dim) - 1; r > c; --r) planes_.emplace_back(r - 1, r);
}

std::vector<double> BasisParametrization::scales() const {
    std::vector<double> s;
    s.reserve(planes_.size() * 2);
    for (size_t k = 0; k < planes_.size(); ++k) {
        s.push_back(kPi);
        s.push_back(2.0 * kPi);
    }
    return s;
}

Matrix BasisParametrization::decode(const std::vector<double>& params) const {
    if (int(params.size()) != param_count())
        throw std::invalid_argument("BasisParametrization::decode: wrong size");
    if (dim_ == 2) return qubit_basis(params[0], params[1]);
    Matrix u = identity(dim_);
    for (size_t k = 0; k < planes_.size(); ++k) {
        const auto [p, q] = planes_[k];
        const double c = std::cos(params[2 * k]), s = std::sin(params[2 * k]);
        const Complex e(std::cos(params[2 * k + 1]),
                        std::sin(params[2 * k + 1]));
        // right-multiply by the plane rotation: mixes columns p and q
        const Vector cp = u.col(p), cq = u.col(q);
        u.col(p) = c * cp + s * e * cq;
        u.col(q) = -s * std::conj(e) * cp + c * cq;
    }
    return u;
}

std::vector<double> BasisParametrization::encode(const Matrix& u) const {
    if (u.rows() != dim_ || u.cols() != dim_)
        throw std::invalid_argument("BasisParametrization::encode: wrong size");
    if (dim_ == 2) {
        const double a = std::abs(u(0, 0)), b = std::abs(u(1, 0));
        const double theta = 2.0 * std::atan2(b, a);
        double phi = 0.0;
        if (a > 1e-14 && b > 1e-14)
            phi = std::arg(u(1, 0)) - std::arg(u(0, 0));
        return {theta, phi};
    }
    Matrix v = u;
    std::vector<double> params(planes_.size() * 2, 0.0);
    // replay the elimination to extract the angles
    size_t k = 0;
    for (int c = 0; c < dim_ - 1; ++c) {
        for (int r = int(dim_) - 1; r > c; --r, ++k) {
            const int p = r - 1;
            const Complex a = v(p, c), b = v(r, c);
            double theta = 0.0, phi = 0.0;
            if (std::abs(b) > 1e-14) {
                theta = std::atan2(std::abs(b), std::abs(a));
                phi = (std::abs(a) > 1e-14)
                          ? std::arg(b) - std::arg(a)
                          : std::arg(b);
            }
            params[2 * k] = theta;
            params[2 * k + 1] = phi;
            // left-multiply by the eliminating rotation G on rows (p, r)
            const double co = std::cos(theta), si = std::sin(theta);
            const Complex e(std::cos(phi), std::sin(phi));
            const Eigen::RowVectorXcd rp = v.row(p), rr = v.row(r);
            v.row(p) = co * rp + si * std::conj(e) * rr;
            v.row(r) = -si * e * rp + co * rr;
        }
    }
    return params;
}

double brute_force_qubit_oracle(
    const std::function<double(const Matrix&)>& objective, int resolution) {
    if (resolution < 8)
        throw std::invalid_argument(
            "brute_force_qubit_oracle: resolution must be >= 8");
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= resolution; ++i)
        for (int j = 0; j < 2 * resolution; ++j) {
            const double v = objective(
                qubit_basis(i * kPi / resolution, j * kPi / resolution));
            if (v < best) best = v;
        }
    return best;
}

OptResult minimize_over_bases(
    const BasisObjective& objective, const std::vector<Eigen::Index>& dims,
    const OptimizerConfig& config,
    const std::vector<std::vector<Matrix>>& extra_starts) {
    if (dims.empty())
        throw std::invalid_argument("minimize_over_bases: no subsystems");
    if (config.restarts < 1)
        throw std::invalid_argument("minimize_over_bases: restarts must be >= 1");
    if (config.convergence_tol <= 0.0)
        throw std::invalid_argument("minimize_over_bases: tolerance must be > 0");

    std::vector<BasisParametrization> par;
    par.reserve(dims.size());
    std::vector<double> scales;
    for (Eigen::Index d : dims) {
        par.emplace_back(d);
        const auto s = par.back().scales();
        scales.insert(scales.end(), s.begin(), s.end());
    }
    const size_t n = scales.size();

    auto decode_all = [&](const std::vector<double>& x) {
        std::vector<Matrix> bases;
        bases.reserve(par.size());
        size_t off = 0;
        for (const auto& pz : par) {
            std::vector<double> chunk(x.begin() + off,
                                      x.begin() + off + pz.param_count());
            bases.push_back(pz.decode(chunk));
            off += pz.param_count();
        }
        return bases;
    };

    long evals = 0;
    auto f = [&](const std::vector<double>& x) {
        return objective(decode_all(x));
    };

    // ----- starting points -----
    std::vector<std::vector<double>> starts;
    for (const auto& bases : extra_starts) {
        if (bases.size() != dims.size())
            throw std::invalid_argument(
                "minimize_over_bases: extra start has wrong arity");
        std::vector<double> x;
        for (size_t s = 0; s < bases.size(); ++s) {
            const auto chunk = par[s].encode(bases[s]);
            x.insert(x.end(), chunk.begin(), chunk.end());
        }
        starts.push_back(std::move(x));
    }

    const int res = std::max(8, config.qubit_grid_resolution);
    if (dims.size() == 1 && dims[0] == 2) {
        // reuse the oracle grid so the refined result can never lose to it
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> bx(2, 0.0);
        for (int i = 0; i <= res; ++i)
            for (int j = 0; j < 2 * res; ++j) {
                const std::vector<double> x{i * kPi / res, j * kPi / res};
                const double v = f(x);
                ++evals;
                if (v < best) {
                    best = v;
                    bx = x;
                }
            }
        starts.push_back(bx);
    } else if (dims.size() == 2 && dims[0] == 2 && dims[1] == 2) {
        const int rj = std::max(4, res / 8);
        double best = std::numeric_limits<double>::infinity();
        std::vector<double> bx(4, 0.0);
        for (int ia = 0; ia <= rj; ++ia)
            for (int ja = 0; ja < 2 * rj; ++ja)
                for (int ib = 0; ib <= rj; ++ib)
                    for (int jb = 0; jb < 2 * rj; ++jb) {
                        const std::vector<double> x{
                            ia * kPi / rj, ja * kPi / rj, ib * kPi / rj,
                            jb * kPi / rj};
                        const double v = f(x);
                        ++evals;
                        if (v < best) {
                            best = v;
                            bx = x;
                        }
                    }
        starts.push_back(bx);
    }

    Rng rng(config.seed);
    for (int r = 0; r < config.restarts; ++r) {
        std::vector<double> x(n);
        for (size_t i = 0; i < n; ++i) {
            const double h = halton(r + 1, prime_at(int(i)));
            const double jitter = 0.05 * rng.uniform();
            x[i] = scales[i] * std::fmod(h + jitter, 1.0);
        }
        starts.push_back(std::move(x));
    }

    // ----- polish every start with Nelder-Mead, keep the best -----
    std::vector<double> steps(n);
    for (size_t i = 0; i < n; ++i) steps[i] = 0.2 * scales[i];

    double best = std::numeric_limits<double>::infinity();
    double second = std::numeric_limits<double>::infinity();
    std::vector<double> best_x;
    bool best_converged = false;
    for (const auto& x0 : starts) {
        const NmOutcome o = nelder_mead(f, x0, steps, config.convergence_tol,
                                        config.max_evaluations, evals);
        if (o.value < best) {
            second = best;
            best = o.value;
            best_x = o.x;
            best_converged = o.converged;
        } else if (o.value < second) {
            second = o.value;
        }
    }

    OptResult result;
    result.bases = decode_all(best_x);
    result.value = objective(result.bases);  // exact re-evaluation
    ++evals;
    result.params = best_x;
    result.stats.restarts_used = int(starts.size());
    result.stats.evaluations = evals;
    result.stats.gap = std::isfinite(second) ? second - best : 0.0;
    result.stats.converged = best_converged;
    return result;
}

}  // namespace noq

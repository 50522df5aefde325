#pragma once

#include <string>
#include <utility>
#include <vector>

namespace fabriclab {

// Degree distribution on {0, ..., max_degree}. Finite support with
// max_degree > 3 throughout.
struct DegreePmf {
    std::vector<double> probs; // probs[d]

    int max_degree() const { return int(probs.size()) - 1; }
    void validate() const; // range, normalization to 1e-12, max_degree > 3
};

DegreePmf point_mass(int d, int max_degree);
DegreePmf binomial_pmf(int trials, double theta);

struct Moments {
    double mean = 0;
    double second = 0; // E[d^2]
};

Moments moments(const DegreePmf& pmf);

// Sum of d(d-2) probs[d]; positive iff the induced configuration graph has a
// giant component in the large-n limit.
double connectivity_z(const DegreePmf& pmf);

// Convex combination of PMFs sharing a support size.
DegreePmf mix_population(const std::vector<std::pair<double, DegreePmf>>& entries);

// Family t -> p(d|t). Default: Binomial(D, theta(t)) with the linear link
// theta(t) = theta_min + (theta_max - theta_min) t. theta_min >= 1/(2(D-1))
// keeps Z(theta) = D((D-1)theta^2 - theta) strictly increasing on the range.
// A tabulated grid (piecewise-linear in t) can replace the closed form.
struct DegreeModelSpec {
    int max_degree = 6;
    double theta_min = 0.13;
    double theta_max = 0.35;

    std::vector<double> grid_t;       // empty for the binomial-link family
    std::vector<DegreePmf> grid_pmf;

    bool tabulated() const { return !grid_t.empty(); }
    double theta_at(double t) const { return theta_min + (theta_max - theta_min) * t; }
    void validate() const;
};

DegreePmf pmf_at(const DegreeModelSpec& spec, double t);

// Interior root of t -> connectivity_z(pmf_at(spec, t)) by bisection;
// |Z(t*)| <= 1e-10. Throws InfeasibleError when Z does not change sign on [0,1].
double critical_t(const DegreeModelSpec& spec);

// Plain-text grid loader: one line per grid point, "t p0 p1 ... pD",
// whitespace-separated, '#' starts a comment. Grid must cover [0,1].
DegreeModelSpec load_tabulated(const std::string& path);

} // namespace fabriclab

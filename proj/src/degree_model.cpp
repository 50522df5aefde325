#include "fabriclab/degree_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "fabriclab/errors.hpp"

namespace fabriclab {

void DegreePmf::validate() const {
    if (max_degree() <= 3)
        throw ValidationError("DegreePmf: max degree must exceed 3");
    double sum = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0 && p <= 1.0))
            throw ValidationError("DegreePmf: probability outside [0,1]");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("DegreePmf: probabilities do not sum to 1");
}

DegreePmf point_mass(int d, int max_degree) {
    if (d < 0 || d > max_degree)
        throw ValidationError("point_mass: degree outside support");
    DegreePmf pmf;
    pmf.probs.assign(std::size_t(max_degree) + 1, 0.0);
    pmf.probs[std::size_t(d)] = 1.0;
    pmf.validate();
    return pmf;
}

DegreePmf binomial_pmf(int trials, double theta) {
    if (trials <= 3) throw ValidationError("binomial_pmf: need more than 3 trials");
    if (!(theta > 0.0 && theta < 1.0))
        throw ValidationError("binomial_pmf: theta must lie in (0,1)");
    DegreePmf pmf;
    pmf.probs.resize(std::size_t(trials) + 1);
    // Upward recurrence keeps the whole vector O(D) without factorials.
    double p = std::pow(1.0 - theta, trials);
    double ratio = theta / (1.0 - theta);
    for (int d = 0; d <= trials; ++d) {
        pmf.probs[std::size_t(d)] = p;
        p *= ratio * double(trials - d) / double(d + 1);
    }
    pmf.validate();
    return pmf;
}

Moments moments(const DegreePmf& pmf) {
    Moments m;
    for (std::size_t d = 0; d < pmf.probs.size(); ++d) {
        m.mean += double(d) * pmf.probs[d];
        m.second += double(d) * double(d) * pmf.probs[d];
    }
    return m;
}

double connectivity_z(const DegreePmf& pmf) {
    double z = 0.0;
    for (std::size_t d = 0; d < pmf.probs.size(); ++d)
        z += double(d) * (double(d) - 2.0) * pmf.probs[d];
    return z;
}

DegreePmf mix_population(const std::vector<std::pair<double, DegreePmf>>& entries) {
    if (entries.empty()) throw ValidationError("mix_population: no entries");
    std::size_t size = entries.front().second.probs.size();
    double wsum = 0.0;
    for (const auto& [w, pmf] : entries) {
        if (w < 0.0) throw ValidationError("mix_population: negative weight");
        if (pmf.probs.size() != size)
            throw ValidationError("mix_population: mismatched max degree");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-12)
        throw ValidationError("mix_population: weights do not sum to 1");
    DegreePmf out;
    out.probs.assign(size, 0.0);
    for (const auto& [w, pmf] : entries)
        for (std::size_t d = 0; d < size; ++d) out.probs[d] += w * pmf.probs[d];
    out.validate();
    return out;
}

void DegreeModelSpec::validate() const {
    if (max_degree <= 3)
        throw ValidationError("DegreeModelSpec: max degree must exceed 3");
    if (tabulated()) {
        if (grid_t.size() != grid_pmf.size() || grid_t.size() < 2)
            throw ValidationError("DegreeModelSpec: tabulated grid needs >= 2 rows");
        if (std::abs(grid_t.front()) > 1e-12 || std::abs(grid_t.back() - 1.0) > 1e-12)
            throw ValidationError("DegreeModelSpec: tabulated grid must cover [0,1]");
        double prev_t = -1.0;
        double prev_z = -1e300;
        for (std::size_t i = 0; i < grid_t.size(); ++i) {
            if (grid_t[i] <= prev_t)
                throw ValidationError("DegreeModelSpec: grid t values must increase");
            prev_t = grid_t[i];
            grid_pmf[i].validate();
            if (grid_pmf[i].max_degree() != max_degree)
                throw ValidationError("DegreeModelSpec: grid rows disagree on max degree");
            if (!(grid_pmf[i].probs[1] > 0.0))
                throw ValidationError("DegreeModelSpec: grid rows need positive degree-1 mass");
            double z = connectivity_z(grid_pmf[i]);
            if (z <= prev_z)
                throw ValidationError("DegreeModelSpec: Z must increase along the grid");
            prev_z = z;
        }
        return;
    }
    if (!(theta_min > 0.0 && theta_min < theta_max && theta_max < 1.0))
        throw ValidationError("DegreeModelSpec: need 0 < theta_min < theta_max < 1");
    // Z(theta) has its minimum at 1/(2(D-1)); starting at or above it makes
    // Z monotone over the whole link range.
    if (theta_min < 1.0 / (2.0 * (max_degree - 1)) - 1e-15)
        throw ValidationError("DegreeModelSpec: theta_min below 1/(2(D-1))");
}

DegreePmf pmf_at(const DegreeModelSpec& spec, double t) {
    spec.validate();
    if (!(t >= 0.0 && t <= 1.0))
        throw std::domain_error("pmf_at: t outside [0,1]");
    if (!spec.tabulated()) return binomial_pmf(spec.max_degree, spec.theta_at(t));

    const auto& ts = spec.grid_t;
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) ++it;
    if (it == ts.end()) --it;
    std::size_t j = std::size_t(it - ts.begin());
    std::size_t i = j - 1;
    double span = ts[j] - ts[i];
    double u = (t - ts[i]) / span;
    DegreePmf out;
    out.probs.resize(spec.grid_pmf[i].probs.size());
    for (std::size_t d = 0; d < out.probs.size(); ++d)
        out.probs[d] = (1.0 - u) * spec.grid_pmf[i].probs[d] + u * spec.grid_pmf[j].probs[d];
    return out;
}

double critical_t(const DegreeModelSpec& spec) {
    spec.validate();
    auto z = [&](double t) { return connectivity_z(pmf_at(spec, t)); };
    double lo = 0.0, hi = 1.0;
    if (!(z(lo) < 0.0 && z(hi) > 0.0))
        throw InfeasibleError("critical_t: Z does not cross zero inside [0,1]");
    while (hi - lo > 1e-14) {
        double mid = 0.5 * (lo + hi);
        (z(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

DegreeModelSpec load_tabulated(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("load_tabulated: cannot open " + path);
    DegreeModelSpec spec;
    spec.max_degree = -1;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        double t;
        if (!(row >> t)) continue; // blank or comment-only line
        DegreePmf pmf;
        double p;
        while (row >> p) pmf.probs.push_back(p);
        if (!row.eof())
            throw ValidationError("load_tabulated: non-numeric token at " + path + ":" +
                                  std::to_string(lineno));
        if (spec.max_degree < 0) spec.max_degree = pmf.max_degree();
        spec.grid_t.push_back(t);
        spec.grid_pmf.push_back(std::move(pmf));
    }
    if (spec.grid_t.empty())
        throw ValidationError("load_tabulated: no grid rows in " + path);
    spec.validate();
    return spec;
}

} // namespace fabriclab

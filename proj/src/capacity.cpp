#include "netcap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <set>

#include "netcap/errors.hpp"
#include "netcap/packing.hpp"

namespace netcap {

ConstantLedger constant_ledger(double c, double c1, int d) {
    if (!(c >= 1.0)) throw DomainError("growth constant c must be >= 1");
    if (!(c1 > 0.0)) throw DomainError("Lipschitz constant c1 must be positive");
    if (d < 1) throw DomainError("input dimension must be >= 1");
    ConstantLedger led;
    led.c = c;
    led.c1 = c1;
    led.d = d;
    double cube = 1.0 + std::pow(2.0, d + 1);
    led.c1_prime = 6.0 * c1 * c * cube;
    led.c2_prime = 2.0 * c * cube;
    led.c3 = 2.0 * std::max(led.c1_prime, led.c2_prime);
    return led;
}

ConstantLedger ledger_for(const Architecture& arch) {
    double c = 1.0, c1 = 0.0;
    for (const auto& layer : arch.layers) {
        c = std::max(c, layer.activation.growth_c);
        c1 = std::max(c1, layer.activation.lipschitz_c1);
    }
    return constant_ledger(c, c1, arch.input_dim);
}

namespace {

// D_l = d_l * ... * d_0
double full_width_product(const Architecture& arch, int l) {
    double prod = arch.input_dim;
    for (int k = 1; k <= l; ++k) prod *= arch.layers[static_cast<std::size_t>(k - 1)].d_out;
    return prod;
}

} // namespace

double stage_constant(const ConstantLedger& ledger, const Architecture& arch, int ell) {
    int L = arch.depth();
    if (ell < 1 || ell > L + 1) throw DomainError("stage_constant: ell must be in 1..L+1");
    double base = std::max(ledger.c1_prime, ledger.c2_prime) * arch.radius;
    double DL = full_width_product(arch, L);
    if (ell < L) {
        return 2.0 * std::pow(base, ell) * std::pow(full_width_product(arch, ell), 2.0) *
               full_width_product(arch, ell + 1);
    }
    return 2.0 * std::pow(base, ell) * DL * DL;
}

double matrix_net_size(int d_out, int d_in, int free_count, double R, double eps) {
    if (d_out < 1 || d_in < 1) throw DomainError("matrix dimensions must be positive");
    if (free_count < 0) throw DomainError("free_count must be nonnegative");
    if (!(R >= 1.0)) throw DomainError("radius must be >= 1");
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    if (free_count == 0) return 0.0;
    double arg = 2.0 * d_out * d_in * R / eps;
    if (arg <= 1.0) return 0.0; // a single point covers the class
    return free_count * std::log2(arg);
}

double layer_recursion_bound(const Architecture& arch, int ell, double eps) {
    arch.validate();
    if (ell < 1 || ell > arch.depth())
        throw DomainError("layer_recursion_bound: layer index out of range");
    if (!(eps > 0.0)) throw DomainError("eps must be positive");

    ConstantLedger led = ledger_for(arch);
    double c1pR = led.c1_prime * arch.radius;
    double log2_total = 0.0;
    double e = eps;
    for (int l = ell; l >= 2; --l) {
        const auto& layer = arch.layers[static_cast<std::size_t>(l - 1)];
        int F = layer.free_weight_count() + layer.free_bias_count();
        double Dl = full_width_product(arch, l);
        double term = l * std::log2(c1pR) + 2.0 * std::log2(Dl) - std::log2(e);
        log2_total += F * std::max(0.0, term);
        e = e / (std::pow(c1pR, l - 1) * Dl);
    }
    const auto& first = arch.layers.front();
    int F1 = first.free_weight_count() + first.free_bias_count();
    double D1 = full_width_product(arch, 1);
    log2_total += F1 * std::max(0.0, std::log2(c1pR * D1 / e));
    return log2_total;
}

CoveringBound covering_bound_from_inputs(int n, int L, double R, double d_max,
                                         double d_prod, const ConstantLedger& ledger,
                                         double eps) {
    if (n < 0 || L < 1) throw DomainError("covering bound needs n >= 0 and L >= 1");
    if (!(R >= 1.0) || !(d_max >= 1.0) || !(d_prod >= 1.0))
        throw DomainError("covering bound needs R, d_max, d_prod >= 1");
    if (!(eps > 0.0)) throw DomainError("eps must be positive");

    CoveringBound b;
    b.epsilon = eps;
    b.n = n;
    b.L = L;
    b.radius = R;
    b.d_max = d_max;
    b.d_prod = d_prod;
    b.ledger = ledger;
    double lg_inv_eps = std::log2(1.0 / eps);
    b.log2_tight = (L + 1.0) * n *
                       ((L + 1.0) * std::log2(ledger.c3 * R) + 3.0 * std::log2(d_prod)) +
                   n * lg_inv_eps;
    b.log2_relaxed =
        3.0 * (L + 1.0) * (L + 1.0) * n * std::log2(ledger.c3 * R * d_max) + n * lg_inv_eps;
    return b;
}

CoveringBound network_covering_bound(const Architecture& arch, double eps) {
    arch.validate();
    return covering_bound_from_inputs(arch.free_param_count(), arch.depth(), arch.radius,
                                      arch.max_width(), full_width_product(arch, arch.depth()),
                                      ledger_for(arch), eps);
}

std::vector<double> build_interval_net(double R, double eps) {
    if (!(R > 0.0)) throw DomainError("radius must be positive");
    if (!(eps > 0.0) || eps > 2.0 * R) throw DomainError("eps must lie in (0, 2R]");
    int count = static_cast<int>(std::ceil(R / eps));
    std::vector<double> pts(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) pts[static_cast<std::size_t>(k)] = -R + (2 * k + 1) * eps;
    return pts;
}

ParamSensitivity parameter_sensitivity(const Architecture& arch) {
    arch.validate();
    const int L = arch.depth();
    const int n = arch.param_count();
    ConstantLedger led = ledger_for(arch);

    ParamSensitivity out;
    out.per_param.assign(static_cast<std::size_t>(n), 0.0);
    out.layers.resize(static_cast<std::size_t>(L));
    out.output_factor = uniform_output_bound(arch, L);

    for (int l = 1; l <= L; ++l) {
        auto& fac = out.layers[static_cast<std::size_t>(l - 1)];
        double bnd_prev = (l == 1) ? 1.0 : uniform_output_bound(arch, l - 1);
        fac.weight_factor = led.c1 * bnd_prev;
        fac.bias_factor = std::pow(2.0, arch.input_dim) * led.c1;
        double prop = arch.layers.back().d_out * arch.radius; // output row
        for (int k = l + 1; k <= L; ++k) {
            const auto& lk = arch.layers[static_cast<std::size_t>(k - 1)];
            prop *= led.c1 * lk.d_out * lk.d_in * arch.radius;
        }
        fac.propagation = prop;

        const auto& layer = arch.layers[static_cast<std::size_t>(l - 1)];
        for (const auto& e : layer.weights)
            if (e.is_free())
                out.per_param[static_cast<std::size_t>(e.index)] += fac.weight_factor * prop;
        std::set<int> bias_slots;
        for (const auto& e : layer.biases)
            if (e.is_free()) bias_slots.insert(e.index);
        for (int i : bias_slots)
            out.per_param[static_cast<std::size_t>(i)] += fac.bias_factor * prop;
    }
    for (const auto& e : arch.output)
        if (e.is_free())
            out.per_param[static_cast<std::size_t>(e.index)] += out.output_factor;
    return out;
}

double EpsilonNet::log2_size() const {
    double lg = 0.0;
    for (const auto& g : param_grids) lg += std::log2(static_cast<double>(g.size()));
    return lg;
}

EpsilonNet enumerate_epsilon_net(const Architecture& arch, double eps) {
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    const int n = arch.param_count();
    if (n > 6) throw GuardError("explicit net enumeration is limited to 6 free slots");

    EpsilonNet net;
    net.epsilon = eps;
    net.sensitivity = parameter_sensitivity(arch);
    if (n == 0) {
        net.points.push_back(ParamAssignment{});
        return net;
    }

    net.param_grids.resize(static_cast<std::size_t>(n));
    net.certified_radius = 0.0;
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        double S = net.sensitivity.per_param[static_cast<std::size_t>(i)];
        double rho = eps / (n * S);
        rho = std::min(rho, 2.0 * arch.radius); // one point is always enough beyond that
        const double needed = std::ceil(arch.radius / rho);
        if (needed > 32.0)
            throw GuardError("per-parameter grid would need " +
                             std::to_string(static_cast<long long>(needed)) +
                             " points; limit is 32");
        auto grid = build_interval_net(arch.radius, rho);
        net.certified_radius += S * rho;
        total *= grid.size();
        net.param_grids[static_cast<std::size_t>(i)] = std::move(grid);
    }
    if (total > 1000000) throw GuardError("net would materialize over 1e6 points");

    // Cartesian product, first slot slowest.
    net.points.reserve(total);
    std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        ParamAssignment p;
        p.values.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            p.values[static_cast<std::size_t>(i)] =
                net.param_grids[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
        net.points.push_back(std::move(p));
        int k = n - 1;
        while (k >= 0 &&
               ++idx[static_cast<std::size_t>(k)] == net.param_grids[static_cast<std::size_t>(k)].size()) {
            idx[static_cast<std::size_t>(k)] = 0;
            --k;
        }
        if (k < 0) break;
    }
    return net;
}

FunctionHandle net_function(const Architecture& arch, const ParamAssignment& params,
                            std::string label) {
    arch.check_params(params);
    auto arch_ptr = std::make_shared<Architecture>(arch);
    auto par_ptr = std::make_shared<ParamAssignment>(params);
    FunctionHandle h;
    h.label = std::move(label);
    h.dim = arch.input_dim;
    h.fn = [arch_ptr, par_ptr](std::span<const double> x) {
        return arch_ptr->evaluate(*par_ptr, x);
    };
    return h;
}

NetValidation validate_epsilon_net(const Architecture& arch, const EpsilonNet& net,
                                   int draws, const QuadratureGrid& grid,
                                   std::uint64_t seed) {
    if (draws <= 0) throw DomainError("draws must be positive");
    NetValidation val;
    val.draws = draws;
    val.seed = seed;
    val.pass = true;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-arch.radius, arch.radius);
    const int n = arch.param_count();

    for (int t = 0; t < draws; ++t) {
        ParamAssignment p;
        p.values.resize(static_cast<std::size_t>(n));
        for (auto& v : p.values) v = unif(rng);

        // Nearest net point: per-slot nearest grid value.
        ParamAssignment q;
        q.values.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const auto& g = net.param_grids[static_cast<std::size_t>(i)];
            double best = g.front();
            for (double cand : g)
                if (std::abs(cand - p.values[static_cast<std::size_t>(i)]) <
                    std::abs(best - p.values[static_cast<std::size_t>(i)]))
                    best = cand;
            q.values[static_cast<std::size_t>(i)] = best;
        }

        auto res = l1_distance(net_function(arch, p), net_function(arch, q), grid);
        val.max_observed_distance = std::max(val.max_observed_distance, res.value);
        val.max_est_tolerance = std::max(val.max_est_tolerance, res.est_tolerance);
        if (res.value > net.epsilon + res.est_tolerance) val.pass = false;
    }
    return val;
}

PackingReport packing_vs_bound_report(const Architecture& arch, double eps,
                                      const std::vector<ParamAssignment>& samples,
                                      const QuadratureGrid& grid) {
    if (!(eps > 0.0)) throw DomainError("eps must be positive");
    PackingReport rep;
    rep.epsilon = eps;
    rep.sample_count = static_cast<int>(samples.size());

    std::vector<FunctionHandle> handles;
    handles.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        handles.push_back(net_function(arch, samples[i], "sample" + std::to_string(i)));

    auto kept = greedy_packing(handles, 2.0 * eps, grid);
    rep.packing_count = static_cast<int>(kept.size());
    rep.log2_packing = rep.packing_count > 0
                           ? std::log2(static_cast<double>(rep.packing_count))
                           : 0.0;
    CoveringBound bound = network_covering_bound(arch, eps);
    rep.log2_tight = bound.log2_tight;
    rep.log2_relaxed = bound.log2_relaxed;
    rep.violation = rep.log2_packing > rep.log2_tight;
    return rep;
}

} // namespace netcap

#include "progfree/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/integer/common_factor.hpp>

namespace progfree {

BigInt lcm_range(int t) {
    if (t < 3) throw std::domain_error("lcm_range requires t >= 3");
    BigInt l = 1;
    for (int i = 2; i < t; ++i) l = boost::multiprecision::lcm(l, BigInt(i));
    return l;
}

bool is_prime_power(int q, int* p_out, int* e_out) {
    if (q < 2) return false;
    int p = 0;
    for (int f = 2; static_cast<long long>(f) * f <= q; ++f) {
        if (q % f == 0) {
            p = f;
            break;
        }
    }
    if (p == 0) p = q;  // q itself prime
    int e = 0;
    int rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++e;
    }
    if (rest != 1) return false;
    if (p_out) *p_out = p;
    if (e_out) *e_out = e;
    return true;
}

Rational parse_rational(const std::string& text) {
    const auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(std::stoll(text), 1);
        const long long num = std::stoll(text.substr(0, slash));
        const long long den = std::stoll(text.substr(slash + 1));
        return Rational(num, den);  // throws on den == 0
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational \"num/den\": " + text);
    }
}

double chernoff_ratio(std::int64_t m, double y) {
    if (m < 1) throw std::domain_error("chernoff_ratio requires m >= 1");
    if (!(y > 0.0 && y < 1.0)) throw std::domain_error("chernoff_ratio requires 0 < y < 1");
    if (m == 1) return 1.0;
    const double ln_y = std::log(y);
    const double one_minus_y = 1.0 - y;
    // log of (1 - y^m), stable for y near 1 where y^m -> 1
    const double log_num = std::log(-std::expm1(static_cast<double>(m) * ln_y));
    const double log_val =
        log_num - (static_cast<double>(m) - 1.0) / 3.0 * ln_y - std::log(static_cast<double>(m) * one_minus_y);
    if (log_val > 700.0) return std::numeric_limits<double>::infinity();
    return std::exp(log_val);
}

namespace {

// Grid on (0,1): log-spaced band near 0, uniform middle, mirrored log-spaced
// band near 1 (the minimizer sits at y ~ 1 - O(1/m) for large m).
std::vector<double> scan_grid(int grid_size) {
    const int band = std::max(grid_size / 3, 8);
    std::vector<double> ys;
    ys.reserve(static_cast<size_t>(band) * 3);
    constexpr double kLo = 1e-9;
    const double span = std::log10(0.1) - std::log10(kLo);  // 8 decades
    for (int i = 0; i < band; ++i) {
        const double t = static_cast<double>(i + 1) / band;
        ys.push_back(std::pow(10.0, std::log10(kLo) + span * t));
    }
    for (int i = 0; i < band; ++i) ys.push_back(0.1 + 0.8 * (i + 1) / band);
    for (int i = 0; i < band; ++i) {
        const double t = static_cast<double>(band - i) / band;
        ys.push_back(1.0 - std::pow(10.0, std::log10(kLo) + span * t));
    }
    std::sort(ys.begin(), ys.end());
    ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
    while (!ys.empty() && ys.front() <= 0.0) ys.erase(ys.begin());
    while (!ys.empty() && ys.back() >= 1.0) ys.pop_back();
    return ys;
}

}  // namespace

RatioMinimum minimize_a(std::int64_t m, const MinimizeOptions& options) {
    if (options.grid_size < 64) throw std::domain_error("minimize_a requires grid_size >= 64");
    if (!(options.refine_tol > 0.0)) throw std::domain_error("minimize_a requires refine_tol > 0");
    if (m == 1) return RatioMinimum{0.5, 1.0, 1.0};

    const std::vector<double> ys = scan_grid(options.grid_size);
    std::vector<double> fs(ys.size());
    size_t best = 0;
    for (size_t i = 0; i < ys.size(); ++i) {
        fs[i] = chernoff_ratio(m, ys[i]);
        if (fs[i] < fs[best]) best = i;
    }

    // Golden-section refinement in the bracket around the best grid cell.
    double a = ys[best > 0 ? best - 1 : best];
    double b = ys[best + 1 < ys.size() ? best + 1 : best];
    constexpr double kGolden = 0.6180339887498949;
    double c = b - kGolden * (b - a);
    double d = a + kGolden * (b - a);
    double fc = chernoff_ratio(m, c);
    double fd = chernoff_ratio(m, d);
    while (b - a > options.refine_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = chernoff_ratio(m, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = chernoff_ratio(m, d);
        }
    }
    const double witness = 0.5 * (a + b);
    const double value = chernoff_ratio(m, witness);

    // Heuristic grid-based lower estimate: best grid value minus the local
    // variation in the adjacent cells (clamped so the invariant
    // grid_lower <= a_value always holds).
    double slack = 0.0;
    if (best > 0 && std::isfinite(fs[best - 1])) slack = std::max(slack, fs[best - 1] - fs[best]);
    if (best + 1 < fs.size() && std::isfinite(fs[best + 1])) slack = std::max(slack, fs[best + 1] - fs[best]);
    const double grid_lower = std::min(value, std::max(0.0, fs[best] - slack));

    return RatioMinimum{witness, value, grid_lower};
}

BoundReport progression_bound(int k, int q, const MinimizeOptions& options) {
    if (k < 3) throw std::domain_error("progression_bound requires k >= 3");
    if (q < k) throw std::domain_error("progression_bound requires q >= k");
    if (!is_prime_power(q)) throw std::domain_error("progression_bound requires q to be a prime power");
    const BigInt l = lcm_range(k);
    const BigInt d_big = boost::multiprecision::gcd(l, BigInt(q));
    const int d = d_big.convert_to<int>();
    const int m = q / d;
    const RatioMinimum min = minimize_a(m, options);
    BoundReport report;
    report.k = k;
    report.q = q;
    report.d = d;
    report.m = m;
    report.witness_y = min.witness_y;
    report.a_value = min.a_value;
    report.c_value = q * min.a_value;
    report.grid_lower = min.grid_lower;
    report.trivial = (m == 1);
    return report;
}

double asymptotic_constant(double alpha) {
    if (!(alpha > 0.0)) throw std::domain_error("asymptotic_constant requires alpha > 0");
    return (std::exp(alpha / 3.0) - std::exp(-2.0 * alpha / 3.0)) / alpha;
}

BetaMajorant beta_majorant(double beta, std::int64_t n_value) {
    if (n_value < 13) throw std::domain_error("beta_majorant requires N >= 13");
    if (!(beta > 0.0 && beta < 13.0)) throw std::domain_error("beta_majorant requires 0 < beta < 13");
    BetaMajorant out;
    out.exact = chernoff_ratio(n_value, 1.0 - beta / static_cast<double>(n_value));
    const double s = beta / (13.0 - beta);
    out.majorant = (std::exp(4.0 * s) - std::exp(-9.0 * s)) / beta;
    return out;
}

GeneralBoundReport general_bound(int k, int q, const MinimizeOptions& options) {
    if (k < 3) throw std::domain_error("general_bound requires k >= 3");
    if (q < 2) throw std::domain_error("general_bound requires q >= 2");
    GeneralBoundReport report;
    report.k = k;
    report.q = q;
    int rest = q;
    for (int p = 2; rest > 1; ++p) {
        if (rest % p != 0) continue;
        int pp = 1;
        while (rest % p == 0) {
            rest /= p;
            pp *= p;
        }
        GeneralBoundEntry entry;
        entry.divisor = pp;
        entry.a_value = minimize_a(pp, options).a_value;
        entry.constant = q * entry.a_value;
        entry.n_below_k = (pp < k);
        report.entries.push_back(entry);
    }
    report.best_divisor = report.entries.front().divisor;
    report.best_constant = report.entries.front().constant;
    for (const auto& e : report.entries) {
        report.any_n_below_k = report.any_n_below_k || e.n_below_k;
        if (e.constant < report.best_constant) {
            report.best_constant = e.constant;
            report.best_divisor = e.divisor;
        }
    }
    return report;
}

const std::vector<std::pair<int, double>>& reference_a_bounds() {
    static const std::vector<std::pair<int, double>> table = {
        {2, 0.94495}, {3, 0.9184}, {4, 0.9027}, {5, 0.8924},
        {7, 0.8795},  {8, 0.8753}, {9, 0.8718}, {11, 0.8667},
    };
    return table;
}

}  // namespace progfree

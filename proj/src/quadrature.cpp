#include "stablefield/quadrature.hpp"

#include <cmath>
#include <vector>

namespace stablefield {

namespace {

struct EvalCounter {
    long long used = 0;
    long long cap = 0;
    void charge(long long n) {
        used += n;
        if (used > cap)
            throw QuadratureError(
                "quadrature did not converge within the evaluation budget "
                "(used " + std::to_string(used) + " evaluations)",
                used);
    }
};

double simpson(double fa, double fm, double fb, double width) {
    return width / 6.0 * (fa + 4.0 * fm + fb);
}

// Classic adaptive Simpson with a Richardson correction. budget is the
// absolute error allowance for this interval and halves per split.
double adapt(const std::function<double(double)>& f, double a, double m,
             double b, double fa, double fm, double fb, double whole,
             double budget, int depth, const QuadratureOptions& o,
             EvalCounter& ev) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    ev.charge(2);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (depth >= o.max_depth ||
        (depth >= o.min_depth && std::abs(err) <= 15.0 * budget))
        return left + right + err / 15.0;
    return adapt(f, a, lm, m, fa, flm, fm, left, 0.5 * budget, depth + 1, o,
                 ev) +
           adapt(f, m, rm, b, fm, frm, fb, right, 0.5 * budget, depth + 1, o,
                 ev);
}

double integrate_1d(const std::function<double(double)>& f, double a, double b,
                    const QuadratureOptions& o, EvalCounter& ev) {
    if (!(b > a)) return 0.0;
    const int panels = o.base_splits;
    const int nodes = 2 * panels + 1;
    std::vector<double> fs(nodes);
    ev.charge(nodes);
    for (int i = 0; i < nodes; ++i)
        fs[i] = f(a + (b - a) * double(i) / double(nodes - 1));

    // Coarse pass sets the absolute error scale; the L1 surrogate keeps the
    // tolerance meaningful when the signed integral nearly cancels.
    const double w = (b - a) / panels;
    std::vector<double> coarse(panels);
    double scale = 0.0;
    for (int p = 0; p < panels; ++p) {
        coarse[p] = simpson(fs[2 * p], fs[2 * p + 1], fs[2 * p + 2], w);
        scale += std::abs(coarse[p]);
    }
    const double budget = o.rel_tol * scale / panels;

    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double pa = a + w * p;
        const double pb = (p + 1 == panels) ? b : a + w * (p + 1);
        total += adapt(f, pa, 0.5 * (pa + pb), pb, fs[2 * p], fs[2 * p + 1],
                       fs[2 * p + 2], coarse[p], budget, 0, o, ev);
    }
    return total;
}

double integrate_axis(const std::function<double(std::span<const double>)>& f,
                      std::span<const double> lo, std::span<const double> hi,
                      std::vector<double>& x, std::size_t axis,
                      const QuadratureOptions& o, EvalCounter& ev) {
    const std::size_t dim = lo.size();
    auto g = [&](double t) -> double {
        x[axis] = t;
        if (axis + 1 == dim) return f(std::span<const double>(x));
        return integrate_axis(f, lo, hi, x, axis + 1, o, ev);
    };
    return integrate_1d(g, lo[axis], hi[axis], o, ev);
}

}  // namespace

double integrate_box(const std::function<double(std::span<const double>)>& f,
                     std::span<const double> lo, std::span<const double> hi,
                     const QuadratureOptions& opts) {
    if (lo.size() != hi.size() || lo.empty())
        throw std::domain_error("integrate_box: bad bounds");
    for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(lo[i] <= hi[i]))
            throw std::domain_error("integrate_box: lo > hi");
    EvalCounter ev;
    ev.cap = opts.max_evals;
    std::vector<double> x(lo.size(), 0.0);
    return integrate_axis(f, lo, hi, x, 0, opts, ev);
}

double integrate_cube(const std::function<double(std::span<const double>)>& f,
                      int dim, double radius, const QuadratureOptions& opts) {
    if (dim < 1 || !(radius > 0.0))
        throw std::domain_error("integrate_cube: bad domain");
    std::vector<double> lo(dim, -radius), hi(dim, radius);
    return integrate_box(f, lo, hi, opts);
}

}  // namespace stablefield

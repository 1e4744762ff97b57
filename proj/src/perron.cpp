#include "volent/perron.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "volent/error.hpp"

namespace volent::perron {

std::vector<std::size_t> scc_labels(const SparseMatrix& a, std::size_t* count) {
    const std::size_t n = a.n;
    constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, unset), low(n, 0), label(n, unset);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::size_t next = 0, comps = 0;
    // Iterative Tarjan: frames are (node, next edge position).
    std::vector<std::pair<std::size_t, std::size_t>> frames;
    for (std::size_t s = 0; s < n; ++s) {
        if (index[s] != unset) continue;
        frames.push_back({s, a.row_start[s]});
        index[s] = low[s] = next++;
        stack.push_back(s);
        on_stack[s] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < a.row_start[v + 1]) {
                std::size_t w = a.col[pos++];
                if (a.val[pos - 1] <= 0) continue;
                if (index[w] == unset) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, a.row_start[w]});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            std::size_t done = v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[done]);
            if (low[done] == index[done]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    label[w] = comps;
                } while (w != done);
                ++comps;
            }
        }
    }
    if (count) *count = comps;
    return label;
}

bool strongly_connected(const SparseMatrix& a) {
    if (a.n == 0) return false;
    std::size_t c = 0;
    scc_labels(a, &c);
    return c == 1;
}

RadiusResult spectral_radius(const SparseMatrix& a, double rel_tol, int max_iter) {
    const std::size_t n = a.n;
    if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty matrix");
    double mean_row = 0;
    for (double v : a.val) mean_row += v;
    mean_row /= static_cast<double>(n);
    const double sigma = std::max(mean_row, 1e-300);

    std::vector<double> x(n, 1.0), y(n);
    RadiusResult r;
    for (int it = 1; it <= max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0;
            for (std::size_t k = a.row_start[i]; k < a.row_start[i + 1]; ++k) s += a.val[k] * x[a.col[k]];
            y[i] = s;
        }
        double lo = std::numeric_limits<double>::infinity(), hi = 0, norm = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double ratio = y[i] / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            y[i] += sigma * x[i];
            norm = std::max(norm, y[i]);
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = std::max(y[i] / norm, 1e-300);
        r.lower = lo;
        r.upper = hi;
        r.iterations = it;
        if (hi - lo <= rel_tol * 0.5 * (hi + lo)) {
            r.radius = 0.5 * (lo + hi);
            return r;
        }
    }
    std::ostringstream os;
    os << "power iteration did not converge in " << max_iter << " steps, bracket [" << r.lower << ", "
       << r.upper << "]";
    throw Error(ErrorCode::PowerIterationStalled, os.str());
}

}  // namespace volent::perron

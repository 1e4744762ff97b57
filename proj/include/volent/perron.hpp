#pragma once

#include <cstddef>
#include <vector>

namespace volent::perron {

// Nonnegative matrix in compressed sparse row form.
struct SparseMatrix {
    std::size_t n = 0;
    std::vector<std::size_t> row_start;  // size n+1
    std::vector<std::size_t> col;
    std::vector<double> val;
};

struct RadiusResult {
    double radius = 0;
    double lower = 0;  // Collatz-Wielandt bracket
    double upper = 0;
    int iterations = 0;
};

// Strongly connected components (Tarjan); returns component id per node.
std::vector<std::size_t> scc_labels(const SparseMatrix& a, std::size_t* count = nullptr);
bool strongly_connected(const SparseMatrix& a);

// Perron root of an irreducible nonnegative matrix by shifted power
// iteration. The shift makes the iteration primitive so periodic graphs
// converge. Stops when the Collatz-Wielandt bounds min/max (Ax)_i/x_i
// agree to rel_tol; throws PowerIterationStalled after max_iter.
RadiusResult spectral_radius(const SparseMatrix& a, double rel_tol, int max_iter = 200000);

}  // namespace volent::perron

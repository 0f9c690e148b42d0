#include "inspect/cusum.hpp"

#include <cmath>
#include <string>

namespace inspect {

PrefixSums::PrefixSums(MatrixRef x) : p_(x.rows()), n_(x.cols()) {
    // Column-major in time: sums_[t * p + j].
    sums_.assign(static_cast<std::size_t>(p_ * (n_ + 1)), 0.0L);
    for (Index t = 0; t < n_; ++t) {
        const long double* prev = &sums_[static_cast<std::size_t>(t * p_)];
        long double* next = &sums_[static_cast<std::size_t>((t + 1) * p_)];
        for (Index j = 0; j < p_; ++j) next[j] = prev[j] + static_cast<long double>(x(j, t));
    }
}

Matrix PrefixSums::window_cusum(Index start, Index end) const {
    if (start < 0 || end > n_ || end - start < 2)
        throw InvalidInput("CUSUM window must lie inside the series and span at least two columns");
    const Index m = end - start;
    Matrix out(p_, m - 1);
    const long double* base = &sums_[static_cast<std::size_t>(start * p_)];
    const long double* last = &sums_[static_cast<std::size_t>(end * p_)];
    const long double len = static_cast<long double>(m);
    for (Index t = 1; t < m; ++t) {
        const long double* cur = &sums_[static_cast<std::size_t>((start + t) * p_)];
        const long double lt = static_cast<long double>(t);
        const long double scale = 1.0L / std::sqrt(len * lt * (len - lt));
        double* col = out.col(t - 1).data();
        for (Index j = 0; j < p_; ++j) {
            const long double total = last[j] - base[j];
            const long double partial = cur[j] - base[j];
            col[j] = static_cast<double>((lt * total - len * partial) * scale);
        }
    }
    return out;
}

Matrix cusum_transform(MatrixRef x) {
    if (x.cols() < 2) throw InvalidInput("CUSUM transform needs n >= 2, got n = " + std::to_string(x.cols()));
    return PrefixSums(x).window_cusum(0, x.cols());
}

CusumMatrix cusum_transform(const ObservationMatrix& x) {
    return CusumMatrix(cusum_transform(MatrixRef(x.values())), x.n());
}

Vector gamma_vector(Index n, Index z) {
    if (n < 2) throw InvalidInput("gamma_vector needs n >= 2");
    if (z < 1 || z > n - 1)
        throw InvalidInput("gamma_vector needs 1 <= z <= n-1, got z = " + std::to_string(z));
    Vector g(n - 1);
    const double nd = static_cast<double>(n);
    const double zd = static_cast<double>(z);
    for (Index t = 1; t <= n - 1; ++t) {
        const double td = static_cast<double>(t);
        g(t - 1) = t <= z ? std::sqrt(td / (nd * (nd - td))) * (nd - zd) : std::sqrt((nd - td) / (nd * td)) * zd;
    }
    return g;
}

}  // namespace inspect

#include "latc/tensor.hpp"

namespace latc {

Matrix unfold(const Tensor3& t, int mode) {
    const Index n1 = t.dim(1), n2 = t.dim(2), n3 = t.dim(3);
    switch (mode) {
        case 1: {
            // column = i2 + i3*n2: remaining modes in increasing order,
            // lower-numbered mode fastest; same rule below for modes 2 and 3
            Matrix m(n1, n2 * n3);
            for (Index c = 0; c < n3; ++c)
                for (Index b = 0; b < n2; ++b)
                    for (Index a = 0; a < n1; ++a) m(a, b + c * n2) = t(a, b, c);
            return m;
        }
        case 2: {
            Matrix m(n2, n1 * n3);
            for (Index c = 0; c < n3; ++c)
                for (Index b = 0; b < n2; ++b)
                    for (Index a = 0; a < n1; ++a) m(b, a + c * n1) = t(a, b, c);
            return m;
        }
        case 3: {
            Matrix m(n3, n1 * n2);
            for (Index c = 0; c < n3; ++c)
                for (Index b = 0; b < n2; ++b)
                    for (Index a = 0; a < n1; ++a) m(c, a + b * n1) = t(a, b, c);
            return m;
        }
        default: throw std::invalid_argument("unfold: mode must be 1, 2 or 3");
    }
}

Tensor3 fold(const Matrix& m, int mode, Index n1, Index n2, Index n3) {
    Tensor3 t(n1, n2, n3);
    switch (mode) {
        case 1:
            if (m.rows() != n1 || m.cols() != n2 * n3)
                throw DimensionError("fold: mode-1 matrix must be n1 x (n2*n3)");
            for (Index c = 0; c < n3; ++c)
                for (Index b = 0; b < n2; ++b)
                    for (Index a = 0; a < n1; ++a) t(a, b, c) = m(a, b + c * n2);
            return t;
        case 2:
            if (m.rows() != n2 || m.cols() != n1 * n3)
                throw DimensionError("fold: mode-2 matrix must be n2 x (n1*n3)");
            for (Index c = 0; c < n3; ++c)
                for (Index b = 0; b < n2; ++b)
                    for (Index a = 0; a < n1; ++a) t(a, b, c) = m(b, a + c * n1);
            return t;
        case 3:
            if (m.rows() != n3 || m.cols() != n1 * n2)
                throw DimensionError("fold: mode-3 matrix must be n3 x (n1*n2)");
            for (Index c = 0; c < n3; ++c)
                for (Index b = 0; b < n2; ++b)
                    for (Index a = 0; a < n1; ++a) t(a, b, c) = m(c, a + b * n1);
            return t;
        default: throw std::invalid_argument("fold: mode must be 1, 2 or 3");
    }
}

Tensor3 to_tensor(const Matrix& values, Index points_per_season) {
    const Index sensors = values.rows();
    const Index n = values.cols();
    if (points_per_season < 1) throw DimensionError("to_tensor: points_per_season must be >= 1");
    if (n % points_per_season != 0)
        throw DimensionError("to_tensor: column count not divisible by points_per_season");
    const Index seasons = n / points_per_season;
    Tensor3 t(sensors, points_per_season, seasons);
    for (Index c = 0; c < seasons; ++c)
        for (Index b = 0; b < points_per_season; ++b)
            for (Index a = 0; a < sensors; ++a) t(a, b, c) = values(a, c * points_per_season + b);
    return t;
}

Tensor3 to_tensor(const TimeSeriesMatrix& y, Index points_per_season) {
    return to_tensor(y.values, points_per_season);
}

Matrix to_matrix(const Tensor3& t) { return unfold(t, 1); }

}  // namespace latc

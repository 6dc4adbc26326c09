#ifndef KDDG_TENSOR_HPP_
#define KDDG_TENSOR_HPP_

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kddg {

/// Dense row-major matrix of doubles. The only tensor shape this project needs.
struct Tensor2D {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;  // rows * cols, row-major

    Tensor2D() = default;
    Tensor2D(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    Tensor2D(std::size_t r, std::size_t c, std::vector<double> values)
        : rows(r), cols(c), data(std::move(values)) {
        if (data.size() != rows * cols)
            throw std::invalid_argument("Tensor2D: data length does not match rows*cols");
    }

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row_ptr(std::size_t i) { return data.data() + i * cols; }
    const double* row_ptr(std::size_t i) const { return data.data() + i * cols; }

    bool same_shape(const Tensor2D& o) const { return rows == o.rows && cols == o.cols; }
};

/// C = A * B^T, with A (n x k) and B (m x k). Result is n x m.
inline Tensor2D matmul_nt(const Tensor2D& a, const Tensor2D& b) {
    if (a.cols != b.cols)
        throw std::invalid_argument("matmul_nt: inner dimensions do not match");
    Tensor2D c(a.rows, b.rows);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t j = 0; j < b.rows; ++j) {
            const double* brow = b.row_ptr(j);
            double s = 0.0;
            for (std::size_t k = 0; k < a.cols; ++k) s += arow[k] * brow[k];
            crow[j] = s;
        }
    }
    return c;
}

/// C = A^T * B, with A (n x k) and B (n x m). Result is k x m.
inline Tensor2D matmul_tn(const Tensor2D& a, const Tensor2D& b) {
    if (a.rows != b.rows)
        throw std::invalid_argument("matmul_tn: inner dimensions do not match");
    Tensor2D c(a.cols, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row_ptr(i);
        const double* brow = b.row_ptr(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            double av = arow[k];
            if (av == 0.0) continue;
            double* crow = c.row_ptr(k);
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

/// C = A * B, with A (n x k) and B (k x m). Result is n x m.
inline Tensor2D matmul(const Tensor2D& a, const Tensor2D& b) {
    if (a.cols != b.rows)
        throw std::invalid_argument("matmul: inner dimensions do not match");
    Tensor2D c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* arow = a.row_ptr(i);
        double* crow = c.row_ptr(i);
        for (std::size_t k = 0; k < a.cols; ++k) {
            double av = arow[k];
            if (av == 0.0) continue;
            const double* brow = b.row_ptr(k);
            for (std::size_t j = 0; j < b.cols; ++j) crow[j] += av * brow[j];
        }
    }
    return c;
}

}  // namespace kddg

#endif  // KDDG_TENSOR_HPP_

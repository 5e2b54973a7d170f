// Copyright 2026 The qpt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QPT_LINALG_H
#define QPT_LINALG_H

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qpt {

/// Dense square real matrix, row-major.
class Matrix {
   public:
    Matrix() : dim_(0) {
    }
    explicit Matrix(size_t dim) : dim_(dim), data_(dim * dim, 0.0) {
    }

    size_t dim() const {
        return dim_;
    }
    double &operator()(size_t i, size_t j) {
        return data_[i * dim_ + j];
    }
    double operator()(size_t i, size_t j) const {
        return data_[i * dim_ + j];
    }
    const std::vector<double> &data() const {
        return data_;
    }
    std::vector<double> &data() {
        return data_;
    }

    double trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    /// max |M_ij - M_ji|.
    double max_asymmetry() const;
    Matrix operator-(const Matrix &other) const;

   private:
    size_t dim_;
    std::vector<double> data_;
};

struct EigenDecomposition {
    std::vector<double> values;
    /// Column j is the eigenvector of values[j].
    Matrix vectors;
    int sweeps;
    double off_diagonal_norm;
    double reconstruction_error;
};

/// Cyclic Jacobi. Sweeps until the off-diagonal Frobenius mass is below
/// 1e-12 (relative to the norm for matrices with norm above 1), then checks
/// that Q diag(values) Q^T reproduces the input within 1e-9 Frobenius.
EigenDecomposition jacobi_eigen(const Matrix &m);

/// Sum of |eigenvalues|. Splits the matrix into the connected components of
/// its nonzero pattern and diagonalizes each block.
double trace_norm(const Matrix &m);

/// Trace norm when the principal block on `zero_block` indices is known to
/// vanish: with M = [[X, B^T], [B, 0]] and B = Q R, the nonzero spectrum is
/// that of [[X, R^T], [R, 0]]. Throws if the block is not zero.
double trace_norm_with_zero_block(const Matrix &m, const std::vector<bool> &zero_block);

/// 1/2 + ||rho0 - rho1||_1 / 4, clamped to [1/2, 1].
double helstrom_success(const Matrix &rho0, const Matrix &rho1);
double helstrom_from_trace_norm(double trace_norm);

/// Binary layout: uint64 dimension, then dim*dim little-endian float64 values
/// in row-major order.
void write_matrix_binary(const std::string &path, const Matrix &m);
Matrix read_matrix_binary(const std::string &path);
void write_matrix_csv(const std::string &path, const Matrix &m);

}  // namespace qpt

#endif

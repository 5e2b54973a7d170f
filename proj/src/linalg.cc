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

#include "qpt/linalg.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>

#include "qpt/errors.h"

namespace qpt {

double Matrix::trace() const {
    double t = 0;
    for (size_t i = 0; i < dim_; i++) {
        t += (*this)(i, i);
    }
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0;
    for (double v : data_) {
        s += v * v;
    }
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double s = 0;
    for (double v : data_) {
        s = std::max(s, std::abs(v));
    }
    return s;
}

double Matrix::max_asymmetry() const {
    double s = 0;
    for (size_t i = 0; i < dim_; i++) {
        for (size_t j = i + 1; j < dim_; j++) {
            s = std::max(s, std::abs((*this)(i, j) - (*this)(j, i)));
        }
    }
    return s;
}

Matrix Matrix::operator-(const Matrix &other) const {
    if (other.dim_ != dim_) {
        throw ContractError("matrix difference of unequal dimensions");
    }
    Matrix out(dim_);
    for (size_t k = 0; k < data_.size(); k++) {
        out.data_[k] = data_[k] - other.data_[k];
    }
    return out;
}

namespace {

void check_symmetric(const Matrix &m) {
    double a = m.max_asymmetry();
    if (a > 1e-9) {
        throw ContractError("matrix is not symmetric (max asymmetry " + std::to_string(a) + ")");
    }
}

double off_diagonal_norm(const Matrix &a) {
    double s = 0;
    for (size_t i = 0; i < a.dim(); i++) {
        for (size_t j = 0; j < a.dim(); j++) {
            if (i != j) {
                s += a(i, j) * a(i, j);
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace

EigenDecomposition jacobi_eigen(const Matrix &input) {
    check_symmetric(input);
    size_t n = input.dim();
    Matrix a = input;
    for (size_t i = 0; i < n; i++) {
        for (size_t j = i + 1; j < n; j++) {
            double v = 0.5 * (a(i, j) + a(j, i));
            a(i, j) = a(j, i) = v;
        }
    }
    Matrix v(n);
    for (size_t i = 0; i < n; i++) {
        v(i, i) = 1;
    }
    double tol = 1e-12 * std::max(1.0, input.frobenius_norm());
    const int max_sweeps = 100;
    int sweeps = 0;
    double off = off_diagonal_norm(a);
    while (off >= tol && sweeps < max_sweeps) {
        sweeps++;
        for (size_t p = 0; p + 1 < n; p++) {
            for (size_t q = p + 1; q < n; q++) {
                double apq = a(p, q);
                if (apq == 0) {
                    continue;
                }
                double app = a(p, p);
                double aqq = a(q, q);
                if (std::abs(apq) < 1e-300) {
                    a(p, q) = a(q, p) = 0;
                    continue;
                }
                double theta = (aqq - app) / (2 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1));
                double c = 1 / std::sqrt(t * t + 1);
                double s = t * c;
                for (size_t k = 0; k < n; k++) {
                    double akp = a(k, p);
                    double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (size_t k = 0; k < n; k++) {
                    double apk = a(p, k);
                    double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = a(q, p) = 0;
                for (size_t k = 0; k < n; k++) {
                    double vkp = v(k, p);
                    double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = off_diagonal_norm(a);
    }
    if (off >= tol) {
        throw InternalConsistencyError("Jacobi iteration did not converge");
    }
    EigenDecomposition out;
    out.values.resize(n);
    for (size_t i = 0; i < n; i++) {
        out.values[i] = a(i, i);
    }
    // Reconstruction check: Q diag(values) Q^T against the input.
    double err = 0;
    std::vector<double> row(n);
    for (size_t i = 0; i < n; i++) {
        for (size_t k = 0; k < n; k++) {
            row[k] = v(i, k) * out.values[k];
        }
        for (size_t j = 0; j < n; j++) {
            double s = 0;
            for (size_t k = 0; k < n; k++) {
                s += row[k] * v(j, k);
            }
            double d = s - input(i, j);
            err += d * d;
        }
    }
    err = std::sqrt(err);
    if (err > 1e-9) {
        throw InternalConsistencyError("Jacobi reconstruction error " + std::to_string(err) + " exceeds 1e-9");
    }
    out.vectors = std::move(v);
    out.sweeps = sweeps;
    out.off_diagonal_norm = off;
    out.reconstruction_error = err;
    return out;
}

namespace {

double dense_trace_norm(const Matrix &m) {
    if (m.dim() == 0) {
        return 0;
    }
    if (m.dim() == 1) {
        return std::abs(m(0, 0));
    }
    double s = 0;
    for (double v : jacobi_eigen(m).values) {
        s += std::abs(v);
    }
    return s;
}

Matrix submatrix(const Matrix &m, const std::vector<size_t> &idx) {
    Matrix out(idx.size());
    for (size_t i = 0; i < idx.size(); i++) {
        for (size_t j = 0; j < idx.size(); j++) {
            out(i, j) = m(idx[i], idx[j]);
        }
    }
    return out;
}

}  // namespace

double trace_norm(const Matrix &m) {
    check_symmetric(m);
    size_t n = m.dim();
    std::vector<int> comp(n, -1);
    double total = 0;
    std::vector<size_t> stack, members;
    for (size_t start = 0; start < n; start++) {
        if (comp[start] >= 0) {
            continue;
        }
        members.clear();
        stack.push_back(start);
        comp[start] = (int)start;
        while (!stack.empty()) {
            size_t i = stack.back();
            stack.pop_back();
            members.push_back(i);
            for (size_t j = 0; j < n; j++) {
                if (comp[j] < 0 && (m(i, j) != 0 || m(j, i) != 0)) {
                    comp[j] = (int)start;
                    stack.push_back(j);
                }
            }
        }
        std::sort(members.begin(), members.end());
        total += dense_trace_norm(submatrix(m, members));
    }
    return total;
}

double trace_norm_with_zero_block(const Matrix &m, const std::vector<bool> &zero_block) {
    check_symmetric(m);
    size_t n = m.dim();
    if (zero_block.size() != n) {
        throw ContractError("zero-block mask has the wrong length");
    }
    std::vector<size_t> r_idx, d_idx;
    for (size_t i = 0; i < n; i++) {
        (zero_block[i] ? d_idx : r_idx).push_back(i);
    }
    for (size_t i : d_idx) {
        for (size_t j : d_idx) {
            if (m(i, j) != 0) {
                throw ContractError("declared zero block has a nonzero entry");
            }
        }
    }
    // Modified Gram-Schmidt (two passes) on the columns of B = M[D, R].
    size_t rows = d_idx.size();
    size_t cols = r_idx.size();
    std::vector<std::vector<double>> q_basis;
    std::vector<std::vector<double>> r_coeffs;  // r_coeffs[c][b] = <q_b, B_c>
    double scale = std::max(1.0, m.max_abs());
    for (size_t c = 0; c < cols; c++) {
        std::vector<double> w(rows);
        for (size_t i = 0; i < rows; i++) {
            w[i] = m(d_idx[i], r_idx[c]);
        }
        std::vector<double> coeff(q_basis.size(), 0.0);
        for (int pass = 0; pass < 2; pass++) {
            for (size_t b = 0; b < q_basis.size(); b++) {
                double dot = 0;
                for (size_t i = 0; i < rows; i++) {
                    dot += q_basis[b][i] * w[i];
                }
                coeff[b] += dot;
                for (size_t i = 0; i < rows; i++) {
                    w[i] -= dot * q_basis[b][i];
                }
            }
        }
        double norm = 0;
        for (double x : w) {
            norm += x * x;
        }
        norm = std::sqrt(norm);
        if (norm > 1e-12 * scale) {
            for (double &x : w) {
                x /= norm;
            }
            q_basis.push_back(std::move(w));
            coeff.push_back(norm);
        }
        r_coeffs.push_back(std::move(coeff));
    }
    size_t rank = q_basis.size();
    Matrix small(cols + rank);
    for (size_t i = 0; i < cols; i++) {
        for (size_t j = 0; j < cols; j++) {
            small(i, j) = m(r_idx[i], r_idx[j]);
        }
    }
    for (size_t c = 0; c < cols; c++) {
        for (size_t b = 0; b < r_coeffs[c].size(); b++) {
            small(cols + b, c) = r_coeffs[c][b];
            small(c, cols + b) = r_coeffs[c][b];
        }
    }
    return trace_norm(small);
}

double helstrom_from_trace_norm(double tn) {
    return std::clamp(0.5 + tn / 4, 0.5, 1.0);
}

double helstrom_success(const Matrix &rho0, const Matrix &rho1) {
    if (rho0.dim() != rho1.dim()) {
        throw ContractError("Helstrom success of states with different dimension");
    }
    return helstrom_from_trace_norm(trace_norm(rho0 - rho1));
}

void write_matrix_binary(const std::string &path, const Matrix &m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ContractError("cannot write matrix file '" + path + "'");
    }
    uint64_t dim = m.dim();
    out.write(reinterpret_cast<const char *>(&dim), sizeof(dim));
    out.write(reinterpret_cast<const char *>(m.data().data()), (std::streamsize)(m.data().size() * sizeof(double)));
}

Matrix read_matrix_binary(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ContractError("cannot open matrix file '" + path + "'");
    }
    uint64_t dim = 0;
    in.read(reinterpret_cast<char *>(&dim), sizeof(dim));
    Matrix m(dim);
    in.read(reinterpret_cast<char *>(m.data().data()), (std::streamsize)(m.data().size() * sizeof(double)));
    if (!in) {
        throw ContractError("matrix file '" + path + "' is truncated");
    }
    return m;
}

void write_matrix_csv(const std::string &path, const Matrix &m) {
    std::ofstream out(path);
    if (!out) {
        throw ContractError("cannot write matrix file '" + path + "'");
    }
    out << std::setprecision(17);
    for (size_t i = 0; i < m.dim(); i++) {
        for (size_t j = 0; j < m.dim(); j++) {
            if (j) {
                out << ',';
            }
            out << m(i, j);
        }
        out << '\n';
    }
}

}  // namespace qpt

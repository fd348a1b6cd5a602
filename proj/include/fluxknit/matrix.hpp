// Copyright 2026 The fluxknit authors
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

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace fluxknit {

using Complex = std::complex<double>;

// Dense complex square matrix, row major. Gates are at most 8x8, so no
// attempt is made at anything clever.
class SquareMatrix {
  public:
    SquareMatrix() : dim_(0) {}

    explicit SquareMatrix(std::size_t dim) : dim_(dim), m_(dim * dim) {}

    SquareMatrix(std::size_t dim, std::initializer_list<Complex> entries)
        : dim_(dim), m_(entries) {
        if (m_.size() != dim * dim) {
            throw std::invalid_argument("matrix entry count does not match dimension");
        }
    }

    static SquareMatrix identity(std::size_t dim) {
        SquareMatrix r(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            r(i, i) = 1.0;
        }
        return r;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t r, std::size_t c) { return m_[r * dim_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_[r * dim_ + c]; }

    SquareMatrix operator*(const SquareMatrix& rhs) const {
        if (dim_ != rhs.dim_) {
            throw std::invalid_argument("matrix dimension mismatch in product");
        }
        SquareMatrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t k = 0; k < dim_; ++k) {
                const Complex a = (*this)(i, k);
                if (a == Complex{}) continue;
                for (std::size_t j = 0; j < dim_; ++j) {
                    r(i, j) += a * rhs(k, j);
                }
            }
        }
        return r;
    }

    SquareMatrix operator+(const SquareMatrix& rhs) const {
        if (dim_ != rhs.dim_) {
            throw std::invalid_argument("matrix dimension mismatch in sum");
        }
        SquareMatrix r = *this;
        for (std::size_t i = 0; i < m_.size(); ++i) r.m_[i] += rhs.m_[i];
        return r;
    }

    SquareMatrix operator-(const SquareMatrix& rhs) const {
        if (dim_ != rhs.dim_) {
            throw std::invalid_argument("matrix dimension mismatch in difference");
        }
        SquareMatrix r = *this;
        for (std::size_t i = 0; i < m_.size(); ++i) r.m_[i] -= rhs.m_[i];
        return r;
    }

    SquareMatrix operator*(Complex s) const {
        SquareMatrix r = *this;
        for (auto& e : r.m_) e *= s;
        return r;
    }

    std::vector<Complex> apply(const std::vector<Complex>& v) const {
        if (v.size() != dim_) {
            throw std::invalid_argument("vector dimension mismatch in apply");
        }
        std::vector<Complex> r(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            Complex acc{};
            for (std::size_t j = 0; j < dim_; ++j) acc += (*this)(i, j) * v[j];
            r[i] = acc;
        }
        return r;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& e : m_) s += std::norm(e);
        return std::sqrt(s);
    }

  private:
    std::size_t dim_;
    std::vector<Complex> m_;
};

inline SquareMatrix compose(const SquareMatrix& a, const SquareMatrix& b) {
    return a * b;
}

inline SquareMatrix tensor(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix r(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) {
                    r(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return r;
}

inline SquareMatrix dagger(const SquareMatrix& a) {
    SquareMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            r(i, j) = std::conj(a(j, i));
        }
    }
    return r;
}

inline bool is_unitary(const SquareMatrix& a, double tol) {
    const SquareMatrix p = a * dagger(a);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Complex want = (i == j) ? Complex{1.0} : Complex{};
            if (std::abs(p(i, j) - want) > tol) return false;
        }
    }
    return true;
}

// True when a = lambda * b for some unit phase lambda, within tol in
// Frobenius norm. The optimal lambda is the phase of tr(b^dag a).
inline bool equal_up_to_global_phase(const SquareMatrix& a, const SquareMatrix& b, double tol) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("matrix dimension mismatch in phase comparison");
    }
    Complex overlap{};
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            overlap += std::conj(b(i, j)) * a(i, j);
        }
    }
    if (std::abs(overlap) < 1e-300) {
        return (a - b).frobenius_norm() <= tol;
    }
    const Complex lambda = overlap / std::abs(overlap);
    return (a - b * lambda).frobenius_norm() <= tol;
}

}  // namespace fluxknit

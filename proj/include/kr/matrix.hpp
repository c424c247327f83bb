#pragma once

#include "kr/bigint.hpp"

#include <initializer_list>
#include <sstream>
#include <vector>

namespace kr {

// Dense integer matrix, row-major. Empty shapes (0 rows and/or 0 columns)
// are legal everywhere; they present free and trivial groups.
class IntMat {
public:
    IntMat() = default;
    IntMat(long rows, long cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows * cols)) {
        if (rows < 0 || cols < 0) fail(ErrorCode::BadInput, "negative matrix shape");
    }

    static IntMat identity(long n) {
        IntMat m(n, n);
        for (long i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMat from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        long r = static_cast<long>(rows.size());
        long c = r == 0 ? 0 : static_cast<long>(rows.begin()->size());
        IntMat m(r, c);
        long i = 0;
        for (const auto& row : rows) {
            if (static_cast<long>(row.size()) != c)
                fail(ErrorCode::BadInput, "ragged initializer");
            long j = 0;
            for (long v : row) m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Int& at(long i, long j) { return a_[static_cast<size_t>(i * cols_ + j)]; }
    const Int& at(long i, long j) const { return a_[static_cast<size_t>(i * cols_ + j)]; }

    bool is_zero() const {
        for (const Int& v : a_)
            if (v != 0) return false;
        return true;
    }

    bool operator==(const IntMat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMat& o) const { return !(*this == o); }

    IntMat operator*(const IntMat& o) const {
        if (cols_ != o.rows_) fail(ErrorCode::BadInput, "matrix product shape mismatch");
        IntMat r(rows_, o.cols_);
        for (long i = 0; i < rows_; ++i)
            for (long k = 0; k < cols_; ++k) {
                const Int& v = at(i, k);
                if (v == 0) continue;
                for (long j = 0; j < o.cols_; ++j) r.at(i, j) += v * o.at(k, j);
            }
        return r;
    }

    IntMat operator-(const IntMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            fail(ErrorCode::BadInput, "matrix difference shape mismatch");
        IntMat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] - o.a_[k];
        return r;
    }

    IntMat operator+(const IntMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            fail(ErrorCode::BadInput, "matrix sum shape mismatch");
        IntMat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = a_[k] + o.a_[k];
        return r;
    }

    IntMat scaled(const Int& c) const {
        IntMat r(rows_, cols_);
        for (size_t k = 0; k < a_.size(); ++k) r.a_[k] = c * a_[k];
        return r;
    }

    IntMat transposed() const {
        IntMat r(cols_, rows_);
        for (long i = 0; i < rows_; ++i)
            for (long j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    IntMat column(long j) const {
        IntMat r(rows_, 1);
        for (long i = 0; i < rows_; ++i) r.at(i, 0) = at(i, j);
        return r;
    }

    IntMat columns(const std::vector<long>& idx) const {
        IntMat r(rows_, static_cast<long>(idx.size()));
        for (long j = 0; j < r.cols(); ++j)
            for (long i = 0; i < rows_; ++i) r.at(i, j) = at(i, idx[static_cast<size_t>(j)]);
        return r;
    }

    static IntMat hstack(const IntMat& a, const IntMat& b) {
        if (a.rows() != b.rows()) fail(ErrorCode::BadInput, "hstack row mismatch");
        IntMat r(a.rows(), a.cols() + b.cols());
        for (long i = 0; i < a.rows(); ++i) {
            for (long j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
            for (long j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
        }
        return r;
    }

    static IntMat vstack(const IntMat& a, const IntMat& b) {
        if (a.cols() != b.cols()) fail(ErrorCode::BadInput, "vstack col mismatch");
        IntMat r(a.rows() + b.rows(), a.cols());
        for (long i = 0; i < a.rows(); ++i)
            for (long j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (long i = 0; i < b.rows(); ++i)
            for (long j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
        return r;
    }

    void paste(long i0, long j0, const IntMat& block) {
        for (long i = 0; i < block.rows(); ++i)
            for (long j = 0; j < block.cols(); ++j) at(i0 + i, j0 + j) = block.at(i, j);
    }

    void swap_rows(long i, long j) {
        if (i == j) return;
        for (long k = 0; k < cols_; ++k) std::swap(at(i, k), at(j, k));
    }
    void swap_cols(long i, long j) {
        if (i == j) return;
        for (long k = 0; k < rows_; ++k) std::swap(at(k, i), at(k, j));
    }
    // row i += c * row j
    void addmul_row(long i, long j, const Int& c) {
        if (c == 0) return;
        for (long k = 0; k < cols_; ++k) at(i, k) += c * at(j, k);
    }
    void addmul_col(long i, long j, const Int& c) {
        if (c == 0) return;
        for (long k = 0; k < rows_; ++k) at(k, i) += c * at(k, j);
    }
    void negate_row(long i) {
        for (long k = 0; k < cols_; ++k) at(i, k) = -at(i, k);
    }
    void negate_col(long j) {
        for (long k = 0; k < rows_; ++k) at(k, j) = -at(k, j);
    }

    // Bareiss fraction-free elimination; exact.
    Int det() const {
        if (rows_ != cols_) fail(ErrorCode::BadInput, "det of non-square matrix");
        long n = rows_;
        if (n == 0) return 1;
        IntMat m = *this;
        Int prev = 1;
        int sign = 1;
        for (long k = 0; k < n - 1; ++k) {
            if (m.at(k, k) == 0) {
                long p = -1;
                for (long i = k + 1; i < n; ++i)
                    if (m.at(i, k) != 0) { p = i; break; }
                if (p < 0) return 0;
                m.swap_rows(k, p);
                sign = -sign;
            }
            for (long i = k + 1; i < n; ++i)
                for (long j = k + 1; j < n; ++j)
                    m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
            prev = m.at(k, k);
        }
        return sign > 0 ? m.at(n - 1, n - 1) : Int(-m.at(n - 1, n - 1));
    }

    std::string to_string() const {
        std::ostringstream os;
        os << "[";
        for (long i = 0; i < rows_; ++i) {
            os << (i ? "; " : "");
            for (long j = 0; j < cols_; ++j) os << (j ? "," : "") << at(i, j);
        }
        os << "]";
        return os.str();
    }

private:
    long rows_ = 0, cols_ = 0;
    std::vector<Int> a_;
};

} // namespace kr

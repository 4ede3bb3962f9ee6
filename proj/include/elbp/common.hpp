#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace elbp {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cplx kI{0.0, 1.0};

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

class ConditioningError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class SingularityError : public Error {
public:
    SingularityError(const std::string& what, long index = -1) : Error(what), index_(index) {}
    long index() const { return index_; }

private:
    long index_;
};

// Raised when a parameter choice makes a denominator, pivot or factor vanish.
class DegenerateError : public Error {
public:
    DegenerateError(const std::string& what, long index = -1) : Error(what), index_(index) {}
    long index() const { return index_; }

private:
    long index_;
};

class UsageError : public Error {
public:
    using Error::Error;
};

// Pairwise summation with a fixed split, so results do not depend on thread layout.
template <class T>
T pairwise_sum(const T* x, std::size_t n) {
    if (n == 0) return T(0);
    if (n <= 8) {
        T s = x[0];
        for (std::size_t i = 1; i < n; ++i) s += x[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(x, h) + pairwise_sum(x + h, n - h);
}

template <class T>
T pairwise_sum(const std::vector<T>& v) {
    return pairwise_sum(v.data(), v.size());
}

}  // namespace elbp

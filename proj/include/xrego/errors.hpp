#pragma once

#include <stdexcept>
#include <string>

namespace xrego {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Inputs whose geometry makes the requested quantity undefined
// (rank-deficient B, x_top* = p_top where a law needs delta > 0, ...).
class DegenerateInput : public Error {
public:
    using Error::Error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

class QuadratureError : public Error {
public:
    QuadratureError(const std::string& what, double achieved)
        : Error(what), achieved_(achieved) {}
    double achieved() const noexcept { return achieved_; }

private:
    double achieved_;
};

class SolverError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw InvalidArgument(msg);
}

inline void require_dims(bool cond, const char* msg) {
    if (!cond) throw DimensionMismatch(msg);
}

}  // namespace xrego

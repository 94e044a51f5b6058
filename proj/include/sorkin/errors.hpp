#pragma once

#include <stdexcept>
#include <cstdio>
#include <string>

namespace sorkin {

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Gaussian integral whose effective quadratic coefficient has Re >= 0.
class NonIntegrable : public Error
{
public:
    using Error::Error;
};

class InvalidDuration : public Error
{
public:
    using Error::Error;
};

class InvalidParameter : public Error
{
public:
    using Error::Error;
};

class ZeroVariance : public Error
{
public:
    using Error::Error;
};

class NotApplicable : public Error
{
public:
    using Error::Error;
};

class ZeroDenominator : public Error
{
public:
    using Error::Error;
};

/// Adaptive quadrature failed to reach its tolerance.
inline std::string fmt_error(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

class NotConverged : public Error
{
public:
    NotConverged(const std::string& what, double achieved)
        : Error(what + " (achieved relative error " + fmt_error(achieved) + ")"),
          achieved_(achieved)
    {
    }
    double achieved() const { return achieved_; }

private:
    double achieved_;
};

} // namespace sorkin

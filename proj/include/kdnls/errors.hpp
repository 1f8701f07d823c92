#pragma once

#include <stdexcept>
#include <string>

namespace kdnls {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class AntiderivativeOfNonMeanZero : public Error {
public:
    using Error::Error;
};

class InvalidCutoff : public Error {
public:
    using Error::Error;
};

class NonRealInput : public Error {
public:
    using Error::Error;
};

class RegularizedWithoutEpsilon : public Error {
public:
    using Error::Error;
};

class BackwardDissipativeStep : public Error {
public:
    using Error::Error;
};

class NumericalBlowup : public Error {
public:
    using Error::Error;
};

class InsufficientStencil : public Error {
public:
    using Error::Error;
};

class CutoffExceedsGrid : public Error {
public:
    using Error::Error;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

/// Config validation failure; `path` names the offending field ("solver.dt").
class ConfigInvalid : public Error {
public:
    ConfigInvalid(const std::string& path, const std::string& what)
        : Error(path + ": " + what), path_(path) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

} // namespace kdnls

#ifndef IDC_ERRORS_HPP_
#define IDC_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace idc {

// Base class for everything this library throws on purpose.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A requested Fock cutoff discards too much probability mass.  Carries the
// tail mass that was actually computed so callers can report or retry.
class insufficient_cutoff : public error {
public:
    insufficient_cutoff(const std::string& msg, double tail)
        : error(msg), tail_mass(tail) {}
    double tail_mass;
};

// A numerical self-check (oracle comparison, invariant sweep) failed.
class verification_failure : public error {
public:
    using error::error;
};

// A request exceeds a configured resource ceiling (matrix dimension, grid size).
class resource_limit : public error {
public:
    using error::error;
};

// Filesystem problem while writing artifacts.
class io_failure : public error {
public:
    using error::error;
};

} // namespace idc

#endif

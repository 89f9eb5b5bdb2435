#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gwkit {

/// Base class for every error raised by the library.
class gw_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class invalid_input : public gw_error {
public:
    using gw_error::gw_error;
};

class invalid_bandwidth : public gw_error {
public:
    using gw_error::gw_error;
};

/// All neighbors coincide with the focal point (zero effective bandwidth).
class degenerate_geometry : public gw_error {
public:
    using gw_error::gw_error;
};

/// Local weighted system is singular or ill-conditioned; carries the focal index.
class singular_fit : public gw_error {
public:
    explicit singular_fit(std::size_t loc)
        : gw_error("singular local fit at location " + std::to_string(loc)),
          location(loc) {}
    std::size_t location;
};

class config_error : public gw_error {
public:
    using gw_error::gw_error;
};

/// Formula text did not parse; carries the byte offset of the problem.
class formula_error : public gw_error {
public:
    formula_error(const std::string& what, std::size_t pos)
        : gw_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

class invalid_interval : public gw_error {
public:
    using gw_error::gw_error;
};

class no_feasible_bandwidth : public gw_error {
public:
    using gw_error::gw_error;
};

class io_error : public gw_error {
public:
    using gw_error::gw_error;
};

}  // namespace gwkit

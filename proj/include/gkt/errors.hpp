#pragma once

#include <stdexcept>
#include <string>

namespace gkt {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bad letters, unparsable words, dimension mismatches in inputs.
struct MalformedInput : Error {
  using Error::Error;
};

// A structurally valid spec that no solver handles (e.g. nested amalgams).
struct UnsupportedSpec : Error {
  using Error::Error;
};

// A spec that fails load-time verification (bad table, non-embedding).
struct InvalidSpec : Error {
  using Error::Error;
};

// Generator-image map that is not a homomorphism.
struct InvalidMap : Error {
  using Error::Error;
};

// Enumeration guard tripped in a brute-force oracle.
struct ResourceLimit : Error {
  using Error::Error;
};

// An operation requiring acyclicity met a cycle.
struct CycleDetected : Error {
  using Error::Error;
};

}  // namespace gkt

#pragma once

#include <stdexcept>
#include <string>

namespace dbc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Elements from two different backends were mixed in one operation.
class BackendMismatch : public Error {
 public:
  using Error::Error;
};

// An operation the backend's capability tier forbids (inversion on a
// sealed group).
class CapabilityUnavailable : public Error {
 public:
  using Error::Error;
};

// Bytes that do not decode under the expected schema: bad tag, out-of-range
// residue, non-bijective permutation, framing errors.
class MalformedEncoding : public Error {
 public:
  using Error::Error;
};

// An issuance session was finished twice.
class SessionConsumed : public Error {
 public:
  using Error::Error;
};

// A key with the wrong role was passed to a role-specific operation.
class RoleMismatch : public Error {
 public:
  using Error::Error;
};

// An oracle declined to answer; reductions propagate this instead of
// retrying.
class OracleFailed : public Error {
 public:
  using Error::Error;
};

// A simulator party received a message for a session it does not know.
class UnknownSession : public Error {
 public:
  using Error::Error;
};

// A scenario script failed validation.
class ScriptInvalid : public Error {
 public:
  using Error::Error;
};

// A store, realm, report or CSV file is unreadable or inconsistent.
class StoreError : public Error {
 public:
  using Error::Error;
};

}  // namespace dbc

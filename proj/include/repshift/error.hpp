#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace repshift {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or inconsistent input: bad files, bad words, element/group
// mismatches, violated preconditions on user data.
class InputError : public Error {
 public:
  using Error::Error;
};

// An enumeration would exceed its configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(std::string const& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + ": requires " + std::to_string(required) + " but cap is "
              + std::to_string(cap)),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

// coset_rep_construct was handed a representation with rho(U) == rho(K).
class NoSeparation : public Error {
 public:
  using Error::Error;
};

}  // namespace repshift

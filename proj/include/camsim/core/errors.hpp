#pragma once

#include <stdexcept>
#include <string>

namespace camsim {

// Caller supplied an argument outside its legal range (usage error).
class ValueError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input lies outside a function's mathematical domain.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bad or inconsistent data: unreadable files, format or shape mismatches.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace camsim

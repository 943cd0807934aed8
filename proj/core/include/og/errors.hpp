#ifndef OG_ERRORS_HPP
#define OG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace og {

// Malformed or out-of-range caller input (bad indices, length mismatches,
// unparsable files).
class input_error : public std::invalid_argument {
 public:
  explicit input_error(const std::string& what) : std::invalid_argument(what) {}
};

// An exact computation was requested on an instance larger than its
// configured size cap.
class cap_error : public std::runtime_error {
 public:
  explicit cap_error(const std::string& what) : std::runtime_error(what) {}
};

// The consistent oracle came up empty on a stream that was promised to be
// realizable. Carries the round at which the contradiction surfaced.
class not_realizable_error : public std::runtime_error {
 public:
  not_realizable_error(const std::string& what, long round)
      : std::runtime_error(what), round_(round) {}
  long round() const { return round_; }

 private:
  long round_;
};

}  // namespace og

#endif  // OG_ERRORS_HPP

#ifndef BQF_ERRORS_HPP
#define BQF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bqf {

/* Violated mathematical precondition; the message names the precondition. */
class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what)
      : std::invalid_argument(what) {}
};

/* Malformed textual input (form literals, integers). */
class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bqf

#endif /* BQF_ERRORS_HPP */

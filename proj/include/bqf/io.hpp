#ifndef BQF_IO_HPP
#define BQF_IO_HPP

#include <cctype>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "bqf/nesting.hpp"

namespace bqf {

/* Canonical form literal: "(a, b, c)" with single spaces after commas. */
inline std::ostream& operator<<(std::ostream& os, const Form& q) {
  return os << '(' << q.a() << ", " << q.b() << ", " << q.c() << ')';
}

inline std::ostream& operator<<(std::ostream& os, const ReducedForm& q) {
  return os << q.form();
}

/* Row-major matrix literal: "[p r; s t]". */
inline std::ostream& operator<<(std::ostream& os, const Mat2& m) {
  return os << '[' << m.p << ' ' << m.r << "; " << m.s << ' ' << m.t << ']';
}

inline std::ostream& operator<<(std::ostream& os, const Discriminant& d) {
  return os << d.value();
}

inline std::ostream& operator<<(std::ostream& os, const LiftIndex& idx) {
  return os << idx.g();
}

inline std::string to_string(const Form& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}

inline std::string to_string(const Mat2& m) {
  std::ostringstream os;
  os << m;
  return os.str();
}

namespace detail {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      throw parse_error(std::string("expected '") + c + "'");
    ++pos_;
  }

  Int integer() {
    skip_ws();
    bool negative = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      negative = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    if (pos_ == start) throw parse_error("expected an integer");
    Int v(std::string(text_.substr(start, pos_ - start)));
    return negative ? -v : v;
  }

  void expect_end() {
    skip_ws();
    if (pos_ != text_.size()) throw parse_error("trailing characters");
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/* Signed decimal integer; the whole string must be consumed. */
inline Int parse_integer(std::string_view text) {
  detail::Cursor cur(text);
  Int v = cur.integer();
  cur.expect_end();
  return v;
}

/* Form literal "(a,b,c)" with optional whitespace around every token. */
inline Form parse_form(std::string_view text) {
  detail::Cursor cur(text);
  cur.expect('(');
  Int a = cur.integer();
  cur.expect(',');
  Int b = cur.integer();
  cur.expect(',');
  Int c = cur.integer();
  cur.expect(')');
  cur.expect_end();
  return Form(std::move(a), std::move(b), std::move(c));
}

}  // namespace bqf

#endif /* BQF_IO_HPP */

#include <algorithm>
#include <cctype>

#include "bordcalc/registry.hpp"

namespace bordcalc {

GroupExprError::GroupExprError(std::size_t offset, const std::string& message)
    : InputError("parse error at offset " + std::to_string(offset) + ": " + message), offset_(offset) {}

std::string GroupAtom::str() const { return param ? name + "(" + std::to_string(*param) + ")" : name; }

std::string GroupExpr::str() const {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) out += (i ? " x " : "") + factors[i].str();
  return quotient ? out + "/K" : out;
}

const std::vector<std::string>& parametric_families() {
  static const std::vector<std::string> v{"SU", "U", "Sp", "Spin", "SO", "PSU"};
  return v;
}

const std::vector<std::string>& exceptional_groups() {
  static const std::vector<std::string> v{"E6", "E7", "E8", "F4", "G2"};
  return v;
}

namespace {

bool in(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

int minimum_parameter(const std::string& family) {
  if (family == "Spin" || family == "SO" || family == "PSU") return 2;
  return 1;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  GroupExpr parse() {
    GroupExpr g;
    skip();
    g.factors.push_back(atom());
    while (true) {
      skip();
      if (at_end()) break;
      if (s_[i_] == 'x') {
        ++i_;
      } else if (s_.compare(i_, 2, "\xC3\x97") == 0) {  // ×
        i_ += 2;
      } else {
        break;
      }
      skip();
      g.factors.push_back(atom());
    }
    if (!at_end() && s_[i_] == '/') {
      ++i_;
      skip();
      if (at_end() || s_[i_] != 'K') throw GroupExprError(i_, "expected 'K' after '/'");
      ++i_;
      g.quotient = true;
      skip();
    }
    if (!at_end()) throw GroupExprError(i_, "unexpected '" + std::string(1, s_[i_]) + "'");
    return g;
  }

 private:
  bool at_end() const { return i_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  GroupAtom atom() {
    std::size_t start = i_;
    if (at_end() || !std::isupper(static_cast<unsigned char>(s_[i_])))
      throw GroupExprError(i_, "expected a group name");
    while (!at_end() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
    GroupAtom a{s_.substr(start, i_ - start), std::nullopt};
    skip();
    if (!at_end() && s_[i_] == '(') {
      ++i_;
      skip();
      std::size_t digits = i_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (digits == i_) throw GroupExprError(i_, "expected an integer parameter");
      if (i_ - digits > 6) throw GroupExprError(digits, "parameter too large");
      int value = std::stoi(s_.substr(digits, i_ - digits));
      skip();
      if (at_end() || s_[i_] != ')') throw GroupExprError(i_, "expected ')'");
      ++i_;
      a.param = value;
    }
    if (in(parametric_families(), a.name)) {
      if (!a.param) throw GroupExprError(start, a.name + " needs a parameter");
      if (*a.param < minimum_parameter(a.name))
        throw GroupExprError(start, "invalid parameter for " + a.name + ": " + std::to_string(*a.param));
    } else if (in(exceptional_groups(), a.name) && a.param) {
      throw GroupExprError(start, a.name + " takes no parameter");
    }
    return a;
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

GroupExpr parse_group(const std::string& text) { return Parser(text).parse(); }

bool is_recognized(const GroupAtom& atom) {
  if (in(exceptional_groups(), atom.name)) return !atom.param;
  return in(parametric_families(), atom.name) && atom.param && *atom.param >= minimum_parameter(atom.name);
}

GroupExpr normalize(const GroupExpr& g) {
  GroupExpr out;
  out.quotient = g.quotient;
  for (GroupAtom a : g.factors) {
    if (a.name == "SO" && a.param) {
      if (*a.param == 2) {
        a = {"U", 1};
      } else {
        a.name = "Spin";
        out.quotient = true;
      }
    } else if (a.name == "PSU") {
      a.name = "SU";
      out.quotient = true;
    }
    if (a.name == "Spin" && a.param) {
      if (*a.param == 3) a = {"SU", 2};
      else if (*a.param == 5) a = {"Sp", 2};
      else if (*a.param == 6) a = {"SU", 4};
    }
    if (a.name == "Sp" && a.param == 1) a = {"SU", 2};
    out.factors.push_back(a);
  }
  return out;
}

}  // namespace bordcalc

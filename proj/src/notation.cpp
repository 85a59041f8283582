#include "wqs/notation.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace wqs {

namespace {

constexpr std::string_view kLetters = "xyztw";

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view strip_braces(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '{') {
    auto close = s.find('}');
    if (close == std::string_view::npos) throw std::invalid_argument("unbalanced brace");
    s = s.substr(1, close - 1);
  }
  return s;
}

std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  while (true) {
    auto c = s.find(',');
    out.push_back(trim(s.substr(0, c)));
    if (c == std::string_view::npos) break;
    s.remove_prefix(c + 1);
  }
  return out;
}

int read_int(std::string_view s, std::size_t& pos) {
  std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data() + start, s.data() + pos, v);
  if (ec != std::errc() || start == pos) throw std::invalid_argument("expected a number in '" + std::string(s) + "'");
  return v;
}

}  // namespace

VariableNames::VariableNames(std::size_t arity)
    : arity_(arity), letters_(arity <= kLetters.size() ? std::string(kLetters.substr(0, arity)) : std::string()) {}

VariableNames::VariableNames(std::size_t arity, std::string letters) : arity_(arity), letters_(std::move(letters)) {
  if (letters_.size() != arity_) throw std::invalid_argument("one letter per variable expected");
}

std::string VariableNames::name(int i) const {
  if (i < 0 || static_cast<std::size_t>(i) >= arity_) throw std::out_of_range("variable index out of range");
  if (!letters_.empty()) return std::string(1, letters_[static_cast<std::size_t>(i)]);
  return "x" + std::to_string(i);
}

int VariableNames::index_of(std::string_view token) const {
  if (token.size() == 1 && !letters_.empty()) {
    auto pos = letters_.find(token[0]);
    if (pos != std::string::npos) return static_cast<int>(pos);
  }
  if (token.size() >= 2 && token[0] == 'x') {
    std::size_t pos = 1;
    int i = read_int(token, pos);
    if (pos == token.size() && static_cast<std::size_t>(i) < arity_) return i;
  }
  throw std::invalid_argument("unknown variable '" + std::string(token) + "'");
}

std::string format_monomial(const Exponents& e, const VariableNames& names) {
  std::string out;
  for (int i = static_cast<int>(e.size()) - 1; i >= 0; --i) {
    if (e[static_cast<std::size_t>(i)] == 0) continue;
    if (!out.empty()) out += '*';
    out += names.name(i);
    if (e[static_cast<std::size_t>(i)] != 1) out += '^' + std::to_string(e[static_cast<std::size_t>(i)]);
  }
  return out.empty() ? "1" : out;
}

std::string format_poly(const SparsePoly& f, const VariableNames& names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    if (!out.empty()) out += " + ";
    std::string m = format_monomial(e, names);
    if (c == 1)
      out += m;
    else if (m == "1")
      out += std::to_string(c);
    else
      out += std::to_string(c) + '*' + m;
  }
  return out;
}

std::string format_index_set(const IndexSet& s, const VariableNames& names) {
  std::string out = "{";
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (k) out += ',';
    out += names.name(s[k]);
  }
  return out + '}';
}

Exponents parse_monomial(std::string_view text, const VariableNames& names) {
  text = trim(text);
  Exponents e(names.arity(), 0);
  if (text == "1") return e;
  if (text.empty()) throw std::invalid_argument("empty monomial");
  std::size_t pos = 0;
  while (pos < text.size()) {
    char ch = text[pos];
    if (ch == '*' || std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
      continue;
    }
    if (!std::isalpha(static_cast<unsigned char>(ch))) throw std::invalid_argument("bad monomial '" + std::string(text) + "'");
    std::size_t start = pos++;
    if (ch == 'x' && pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    int var = names.index_of(text.substr(start, pos - start));
    int power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      power = read_int(text, pos);
    }
    e[static_cast<std::size_t>(var)] += power;
  }
  return e;
}

std::vector<Exponents> parse_monomial_list(std::string_view text, const VariableNames& names) {
  std::vector<Exponents> out;
  for (auto item : split_commas(strip_braces(text))) out.push_back(parse_monomial(item, names));
  return out;
}

IndexSet parse_variable_list(std::string_view text, const VariableNames& names) {
  IndexSet out;
  text = strip_braces(text);
  if (trim(text).empty()) return out;
  for (auto item : split_commas(text)) {
    if (item.empty()) throw std::invalid_argument("empty variable name");
    out.push_back(names.index_of(item));
  }
  std::sort(out.begin(), out.end());
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) throw std::invalid_argument("repeated variable");
  return out;
}

}  // namespace wqs

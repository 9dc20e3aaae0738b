// Copyright 2026 The eamod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "eamod/lp_format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <cstdio>
#include <unordered_map>

#include "eamod/errors.hpp"
#include "eamod/graph_io.hpp"

namespace eamod {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTermsPerLine = 8;

void append_term(std::string& out, int& on_line, double coef, const std::string& name) {
  if (on_line == kTermsPerLine) {
    out += "\n   ";
    on_line = 0;
  }
  out += coef < 0 || std::signbit(coef) ? " - " : " + ";
  out += format_double(std::abs(coef));
  out += ' ';
  out += name;
  ++on_line;
}

std::string bound_text(double v) {
  if (v == kInf) return "+inf";
  if (v == -kInf) return "-inf";
  return format_double(v);
}

// --- parsing ---------------------------------------------------------------

struct Token {
  std::string text;
  int line = 0;
};

bool is_operator_char(char c) { return c == '<' || c == '>' || c == '='; }
bool is_break_char(char c) {
  return std::isspace(static_cast<unsigned char>(c)) || c == ':' || c == '+' || c == '-' ||
         is_operator_char(c);
}

void tokenize(std::string_view s, int line, std::vector<Token>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
    } else if (c == ':' || c == '+' || c == '-') {
      out.push_back({std::string(1, c), line});
      ++i;
    } else if (is_operator_char(c)) {
      std::size_t j = i + 1;
      if (j < s.size() && is_operator_char(s[j])) ++j;
      out.push_back({std::string(s.substr(i, j - i)), line});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t j = i;
      while (j < s.size() && (std::isdigit(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
      if (j < s.size() && (s[j] == 'e' || s[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < s.size() && (s[k] == '+' || s[k] == '-')) ++k;
        if (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) {
          j = k;
          while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        }
      }
      out.push_back({std::string(s.substr(i, j - i)), line});
      i = j;
    } else {
      std::size_t j = i;
      while (j < s.size() && !is_break_char(s[j])) ++j;
      out.push_back({std::string(s.substr(i, j - i)), line});
      i = j;
    }
  }
}

std::string lower_case(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_number_token(const std::string& t) {
  if (t.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(t[0])) || t[0] == '.') return true;
  const std::string l = lower_case(t);
  return l == "inf" || l == "infinity";
}

double to_number(const Token& t) {
  const std::string l = lower_case(t.text);
  if (l == "inf" || l == "infinity") return kInf;
  double v = 0.0;
  const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || p != t.text.data() + t.text.size()) {
    throw ParseError(t.line, "malformed number '" + t.text + "'");
  }
  return v;
}

bool is_sense(const std::string& t) {
  return t == "<=" || t == "=<" || t == "<" || t == ">=" || t == "=>" || t == ">" || t == "=";
}

RowSense to_sense(const std::string& t) {
  if (t == "=") return RowSense::kEqual;
  if (t[0] == '<' || t == "=<") return RowSense::kLessEqual;
  return RowSense::kGreaterEqual;
}

enum class Section { kNone, kObjective, kConstraints, kBounds, kGeneral, kBinary, kEnd };

// Section keyword at the start of a line; `rest` receives what follows it.
Section section_keyword(std::string_view line, std::string_view& rest) {
  std::size_t i = 0;
  while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
  std::size_t j = i;
  while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
  const std::string word = lower_case(line.substr(i, j - i));
  rest = line.substr(j);
  if (word == "minimize" || word == "minimum" || word == "min" || word == "maximize" ||
      word == "maximum" || word == "max") {
    return Section::kObjective;
  }
  if (word == "st" || word == "s.t." || word == "st.") return Section::kConstraints;
  if (word == "subject" || word == "such") {
    std::size_t k = j;
    while (k < line.size() && std::isspace(static_cast<unsigned char>(line[k]))) ++k;
    std::size_t e = k;
    while (e < line.size() && !std::isspace(static_cast<unsigned char>(line[e]))) ++e;
    const std::string next = lower_case(line.substr(k, e - k));
    if ((word == "subject" && next == "to") || (word == "such" && next == "that")) {
      rest = line.substr(e);
      return Section::kConstraints;
    }
    return Section::kNone;
  }
  if (word == "bounds" || word == "bound") return Section::kBounds;
  if (word == "general" || word == "generals" || word == "gen" || word == "integers") {
    return Section::kGeneral;
  }
  if (word == "binary" || word == "binaries" || word == "bin") return Section::kBinary;
  if (word == "end") return Section::kEnd;
  return Section::kNone;
}

void infer_column(Column& c) {
  int a = -1, b = -1;
  if (std::sscanf(c.name.c_str(), "xm%d_a%d", &a, &b) == 2) {
    c.kind = ColumnKind::kUserFlow;
    c.demand = a;
    c.arc = b;
  } else if (std::sscanf(c.name.c_str(), "xr_a%d", &a) == 1) {
    c.kind = ColumnKind::kRebalancingFlow;
    c.arc = a;
  } else if (std::sscanf(c.name.c_str(), "c_g%d", &a) == 1) {
    c.kind = ColumnKind::kSiting;
    c.station = a;
  }
}

class LpReader {
 public:
  ProblemInstance read(std::string_view text);

 private:
  int column(const Token& t) {
    auto it = index_.find(t.text);
    if (it != index_.end()) return it->second;
    const int j = static_cast<int>(names_.size());
    index_.emplace(t.text, j);
    names_.push_back(t.text);
    cost_.push_back(0.0);
    lower_.push_back(0.0);
    upper_.push_back(kInf);
    integer_.push_back(0);
    return j;
  }
  // Linear terms from tokens[i] up to the first sense operator (or the end).
  std::size_t terms(const std::vector<Token>& tok, std::size_t i,
                    std::vector<std::pair<int, double>>& out) {
    while (i < tok.size() && !is_sense(tok[i].text)) {
      double sign = 1.0;
      bool any = false;
      while (i < tok.size() && (tok[i].text == "+" || tok[i].text == "-")) {
        if (tok[i].text == "-") sign = -sign;
        ++i;
        any = true;
      }
      if (i >= tok.size()) throw ParseError(tok.back().line, "dangling sign");
      double coef = 1.0;
      if (is_number_token(tok[i].text)) {
        coef = to_number(tok[i]);
        ++i;
        if (i >= tok.size() || is_sense(tok[i].text) || tok[i].text == "+" || tok[i].text == "-") {
          throw ParseError(tok[i - 1].line, "constant terms are not supported");
        }
      }
      if (tok[i].text == ":") throw ParseError(tok[i].line, "unexpected ':'");
      (void)any;
      out.emplace_back(column(tok[i]), sign * coef);
      ++i;
    }
    return i;
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<double> cost_, lower_, upper_;
  std::vector<char> integer_;
};

ProblemInstance LpReader::read(std::string_view text) {
  std::vector<Token> objective, constraints;
  std::vector<std::vector<Token>> bound_lines;
  std::vector<Token> general, binary;
  Section section = Section::kNone;
  bool maximize = false;
  bool ended = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size() && !ended) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto c = line.find('\\'); c != std::string_view::npos) line = line.substr(0, c);
    std::string_view rest;
    const Section s = section_keyword(line, rest);
    if (s != Section::kNone) {
      if (s == Section::kObjective) {
        const std::string w = lower_case(line.substr(0, line.size() - rest.size()));
        maximize = w.find("max") != std::string::npos;
      }
      section = s;
      line = rest;
      if (s == Section::kEnd) ended = true;
    }
    switch (section) {
      case Section::kNone:
        for (char ch : line) {
          if (!std::isspace(static_cast<unsigned char>(ch))) {
            throw ParseError(line_no, "content before the objective section");
          }
        }
        break;
      case Section::kObjective: tokenize(line, line_no, objective); break;
      case Section::kConstraints: tokenize(line, line_no, constraints); break;
      case Section::kBounds: {
        std::vector<Token> t;
        tokenize(line, line_no, t);
        if (!t.empty()) bound_lines.push_back(std::move(t));
        break;
      }
      case Section::kGeneral: tokenize(line, line_no, general); break;
      case Section::kBinary: tokenize(line, line_no, binary); break;
      case Section::kEnd: break;
    }
    if (eol == text.size()) break;
  }
  if (!ended) throw ParseError(line_no, "missing End");

  // Objective.
  {
    std::size_t i = 0;
    if (objective.size() >= 2 && objective[1].text == ":") i = 2;
    std::vector<std::pair<int, double>> t;
    i = terms(objective, i, t);
    if (i != objective.size()) throw ParseError(objective[i].line, "unexpected operator in objective");
    for (const auto& [j, v] : t) cost_[j] += maximize ? -v : v;
  }

  // Constraints.
  ProblemInstance pi;
  std::vector<Eigen::Triplet<double>> trip;
  for (std::size_t i = 0; i < constraints.size();) {
    Row row;
    const int line = constraints[i].line;
    if (i + 1 < constraints.size() && constraints[i + 1].text == ":") {
      row.name = constraints[i].text;
      i += 2;
    } else {
      row.name = "R" + std::to_string(pi.rows.size() + 1);
    }
    std::vector<std::pair<int, double>> t;
    i = terms(constraints, i, t);
    if (i >= constraints.size()) throw ParseError(line, "constraint '" + row.name + "' has no sense");
    row.sense = to_sense(constraints[i].text);
    ++i;
    double sign = 1.0;
    while (i < constraints.size() && (constraints[i].text == "+" || constraints[i].text == "-")) {
      if (constraints[i].text == "-") sign = -sign;
      ++i;
    }
    if (i >= constraints.size() || !is_number_token(constraints[i].text)) {
      throw ParseError(line, "constraint '" + row.name + "' has no right-hand side");
    }
    row.rhs = sign * to_number(constraints[i]);
    ++i;
    row.tag = tag_from_name(row.name);
    const int r = static_cast<int>(pi.rows.size());
    pi.rows.push_back(std::move(row));
    for (const auto& [j, v] : t) {
      if (v != 0.0) trip.emplace_back(r, j, v);
    }
  }

  // Bounds, one statement per line.
  for (const auto& b : bound_lines) {
    const int line = b.front().line;
    std::vector<Token> t;
    // Fold signs into the following number.
    for (std::size_t i = 0; i < b.size(); ++i) {
      if ((b[i].text == "+" || b[i].text == "-") && i + 1 < b.size() && is_number_token(b[i + 1].text)) {
        t.push_back({b[i].text + b[i + 1].text, line});
        ++i;
      } else {
        t.push_back(b[i]);
      }
    }
    auto num = [&](const Token& k) {
      std::string s = k.text;
      double sign = 1.0;
      if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
        if (s[0] == '-') sign = -1.0;
        s.erase(0, 1);
      }
      return sign * to_number({s, k.line});
    };
    auto numeric = [&](const Token& k) {
      std::string s = k.text;
      if (!s.empty() && (s[0] == '+' || s[0] == '-')) s.erase(0, 1);
      return is_number_token(s);
    };
    if (t.size() == 2 && lower_case(t[1].text) == "free") {
      const int j = column(t[0]);
      lower_[j] = -kInf;
      upper_[j] = kInf;
    } else if (t.size() == 3 && !numeric(t[0]) && is_sense(t[1].text) && numeric(t[2])) {
      const int j = column(t[0]);
      const double v = num(t[2]);
      switch (to_sense(t[1].text)) {
        case RowSense::kEqual: lower_[j] = upper_[j] = v; break;
        case RowSense::kLessEqual: upper_[j] = v; break;
        case RowSense::kGreaterEqual: lower_[j] = v; break;
      }
    } else if (t.size() == 3 && numeric(t[0]) && is_sense(t[1].text) && !numeric(t[2])) {
      const int j = column(t[2]);
      const double v = num(t[0]);
      switch (to_sense(t[1].text)) {
        case RowSense::kEqual: lower_[j] = upper_[j] = v; break;
        case RowSense::kLessEqual: lower_[j] = v; break;
        case RowSense::kGreaterEqual: upper_[j] = v; break;
      }
    } else if (t.size() == 5 && numeric(t[0]) && to_sense(t[1].text) == RowSense::kLessEqual &&
               is_sense(t[1].text) && !numeric(t[2]) && is_sense(t[3].text) &&
               to_sense(t[3].text) == RowSense::kLessEqual && numeric(t[4])) {
      const int j = column(t[2]);
      lower_[j] = num(t[0]);
      upper_[j] = num(t[4]);
    } else {
      throw ParseError(line, "unrecognised bound statement");
    }
  }
  for (const auto& t : general) integer_[column(t)] = 1;
  for (const auto& t : binary) {
    const int j = column(t);
    integer_[j] = 1;
    lower_[j] = std::max(lower_[j], 0.0);
    upper_[j] = std::min(upper_[j], 1.0);
  }

  const int n = static_cast<int>(names_.size());
  pi.columns.resize(n);
  for (int j = 0; j < n; ++j) {
    pi.columns[j].name = names_[j];
    infer_column(pi.columns[j]);
  }
  pi.cost = Eigen::Map<const Eigen::VectorXd>(cost_.data(), n);
  pi.lower = Eigen::Map<const Eigen::VectorXd>(lower_.data(), n);
  pi.upper = Eigen::Map<const Eigen::VectorXd>(upper_.data(), n);
  pi.integer = integer_;
  pi.matrix.resize(pi.num_rows(), n);
  pi.matrix.setFromTriplets(trip.begin(), trip.end());
  return pi;
}

}  // namespace

std::string export_lp_text(const ProblemInstance& pi) {
  const InstanceStats st = pi.stats();
  std::string out = "\\ " + format_stats(st) + "\nMinimize\n obj:";
  int on_line = 0;
  for (int j = 0; j < pi.num_cols(); ++j) append_term(out, on_line, pi.cost[j], pi.columns[j].name);
  out += "\nSubject To\n";
  for (int r = 0; r < pi.num_rows(); ++r) {
    const Row& row = pi.rows[r];
    out += ' ' + row.name + ':';
    on_line = 0;
    bool empty = true;
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(pi.matrix, r); it; ++it) {
      if (it.value() == 0.0) continue;
      append_term(out, on_line, it.value(), pi.columns[it.col()].name);
      empty = false;
    }
    if (empty) {
      if (pi.num_cols() == 0) throw ValidationError("cannot write an empty row without columns");
      append_term(out, on_line, 0.0, pi.columns[0].name);
    }
    switch (row.sense) {
      case RowSense::kEqual: out += " = "; break;
      case RowSense::kLessEqual: out += " <= "; break;
      case RowSense::kGreaterEqual: out += " >= "; break;
    }
    out += format_double(row.rhs == 0.0 ? 0.0 : row.rhs) + '\n';
  }
  out += "Bounds\n";
  for (int j = 0; j < pi.num_cols(); ++j) {
    const std::string& name = pi.columns[j].name;
    const double lo = pi.lower[j], up = pi.upper[j];
    if (lo == -kInf && up == kInf) {
      out += ' ' + name + " free\n";
    } else if (up == kInf) {
      out += ' ' + name + " >= " + bound_text(lo) + '\n';
    } else if (lo == up) {
      out += ' ' + name + " = " + bound_text(lo) + '\n';
    } else {
      out += ' ' + bound_text(lo) + " <= " + name + " <= " + bound_text(up) + '\n';
    }
  }
  std::string generals, binaries;
  for (int j = 0; j < pi.num_cols(); ++j) {
    if (j >= static_cast<int>(pi.integer.size()) || !pi.integer[j]) continue;
    const bool binary = pi.lower[j] == 0.0 && pi.upper[j] == 1.0;
    (binary ? binaries : generals) += ' ' + pi.columns[j].name + '\n';
  }
  if (!generals.empty()) out += "General\n" + generals;
  if (!binaries.empty()) out += "Binaries\n" + binaries;
  out += "End\n";
  return out;
}

ProblemInstance parse_lp_text(std::string_view text) {
  LpReader reader;
  return reader.read(text);
}

}  // namespace eamod

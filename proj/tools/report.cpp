#include "report.hpp"

#include "dsamp/error.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <ostream>

namespace dsamp::cli {

namespace {

void put_field(std::ostream &out, const std::string &s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) {
    out << s;
    return;
  }
  out << '"';
  for (char c : s) {
    if (c == '"')
      out << '"';
    out << c;
  }
  out << '"';
}

void put_row(std::ostream &out, const std::vector<std::string> &row) {
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i)
      out << ',';
    put_field(out, row[i]);
  }
  out << '\n';
}

bool numeric(const std::string &s) {
  if (s.empty())
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= '0' && c <= '9') || c == '.' || c == '-' || c == '+' || c == 'e';
  });
}

} // namespace

void write_csv(std::ostream &out, const Table &t) {
  put_row(out, t.header);
  for (const auto &r : t.rows)
    put_row(out, r);
}

Table parse_csv(std::istream &in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  std::size_t line = 1;
  for (int ch; (ch = in.get()) != EOF;) {
    const char c = static_cast<char>(ch);
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          field += '"';
          in.get();
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n')
          ++line;
        field += c;
      }
    } else if (c == '"') {
      if (!field.empty())
        throw ParseError(line, "quote inside an unquoted field");
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      records.push_back(std::move(row));
      row.clear();
      any = false;
      ++line;
    } else {
      field += c;
    }
  }
  if (quoted)
    throw ParseError(line, "unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    records.push_back(std::move(row));
  }
  Table t;
  if (records.empty())
    return t;
  t.header = std::move(records.front());
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].size() != t.header.size())
      throw ParseError(i + 1, "row width differs from the header");
    t.rows.push_back(std::move(records[i]));
  }
  return t;
}

void write_text(std::ostream &out, const Table &t) {
  std::vector<std::size_t> width(t.header.size(), 0);
  for (std::size_t c = 0; c < t.header.size(); ++c) {
    width[c] = t.header[c].size();
    for (const auto &r : t.rows)
      width[c] = std::max(width[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string> &r) {
    std::string s;
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::string cell = r[c].empty() ? "-" : r[c];
      const std::string gap(width[c] - std::min(width[c], cell.size()), ' ');
      if (c)
        s += "  ";
      s += (c > 0 && (numeric(cell) || cell == "-")) ? gap + cell : cell + gap;
    }
    while (!s.empty() && s.back() == ' ')
      s.pop_back();
    out << s << '\n';
  };
  line(t.header);
  for (const auto &r : t.rows)
    line(r);
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-')
    s.erase(0, 1);
  return s;
}

} // namespace dsamp::cli

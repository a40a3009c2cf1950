#include "ratsys/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "ratsys/errors.hpp"

namespace ratsys {

std::string format_double(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj, std::optional<Diverged> diverged) {
  out << "n";
  for (int i = 1; i <= traj.dim(); ++i) out << ",v" << i;
  out << '\n';
  for (long n = traj.first(); n <= traj.last(); ++n) {
    out << n;
    for (double x : traj[n]) out << ',' << format_double(x);
    out << '\n';
  }
  if (diverged) out << "# diverged at n=" << diverged->step << '\n';
}

namespace {

[[noreturn]] void bad(std::size_t line, const std::string& msg) {
  throw Error(ErrorCode::kConfig, "trajectory CSV line " + std::to_string(line) + ": " + msg);
}

template <class T>
T parse_field(const std::string& s, std::size_t line) {
  T value{};
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) bad(line, "cannot parse '" + s + "'");
  return value;
}

}  // namespace

CsvTrajectory read_trajectory_csv(std::istream& in) {
  CsvTrajectory out;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string tag = "# diverged at n=";
      if (line.rfind(tag, 0) == 0) out.diverged_at = parse_field<long>(line.substr(tag.size()), lineno);
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!header) {
      if (cells.empty() || cells.front() != "n") bad(lineno, "expected header starting with 'n'");
      for (std::size_t i = 1; i < cells.size(); ++i)
        if (cells[i] != "v" + std::to_string(i)) bad(lineno, "unexpected header column '" + cells[i] + "'");
      out.m = static_cast<int>(cells.size()) - 1;
      header = true;
      continue;
    }
    if (static_cast<int>(cells.size()) != out.m + 1) bad(lineno, "wrong number of columns");
    const long n = parse_field<long>(cells.front(), lineno);
    if (out.n.empty())
      out.first_n = n;
    else if (n != out.n.back() + 1)
      bad(lineno, "row indices must be consecutive");
    out.n.push_back(n);
    for (std::size_t i = 1; i < cells.size(); ++i) out.values.push_back(parse_field<double>(cells[i], lineno));
  }
  if (!header) bad(lineno, "missing header");
  return out;
}

}  // namespace ratsys

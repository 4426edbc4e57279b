#include "linkrec/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "linkrec/error.hpp"

namespace linkrec::io {

namespace {
constexpr const char* kModule = "data_io";

struct Line {
  std::size_t number;
  std::vector<std::string> fields;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

/// Data lines after a header matching `header`; blank lines are skipped.
std::vector<Line> read_table(const std::string& text, const std::vector<std::string>& header,
                             std::size_t min_fields, const std::string& what) {
  std::istringstream in(text);
  std::string raw;
  std::vector<Line> out;
  std::size_t number = 0;
  bool seen_header = false;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    auto fields = split(raw, ',');
    if (!seen_header) {
      seen_header = true;
      std::vector<std::string> prefix(fields.begin(), fields.begin() + std::min(fields.size(), header.size()));
      if (fields.size() < min_fields || fields.size() > header.size() ||
          !std::equal(prefix.begin(), prefix.end(), header.begin()))
        fail(ErrorKind::kParse, kModule, what + " line " + std::to_string(number) + ": unexpected header");
      continue;
    }
    if (fields.size() < min_fields || fields.size() > header.size())
      fail(ErrorKind::kParse, kModule,
           what + " line " + std::to_string(number) + ": expected " + std::to_string(min_fields) + ".." +
               std::to_string(header.size()) + " fields");
    out.push_back({number, std::move(fields)});
  }
  if (!seen_header) fail(ErrorKind::kParse, kModule, what + ": missing header");
  return out;
}

template <class T>
T parse_number(const std::string& s, const Line& line, const std::string& what) {
  T v{};
  const char* b = s.data();
  const char* e = s.data() + s.size();
  auto [p, ec] = std::from_chars(b, e, v);
  if (ec != std::errc() || p != e || s.empty())
    fail(ErrorKind::kParse, kModule,
         what + " line " + std::to_string(line.number) + ": cannot parse '" + s + "'");
  return v;
}

void write_stream(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorKind::kIo, kModule, "cannot open " + path + " for writing");
  out << content;
  out.close();
  if (!out) fail(ErrorKind::kIo, kModule, "write failed for " + path);
}
}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void atomic_write(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  write_stream(tmp, content);
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorKind::kIo, kModule, "cannot rename " + tmp + " to " + path + ": " + ec.message());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, kModule, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TemporalGraph parse_graph(const std::string& edges_csv, const std::string& users_csv) {
  std::vector<UserInfo> users;
  for (const Line& l : read_table(users_csv, {"user", "reg_month", "m", "intrinsic"}, 2, "users")) {
    UserInfo u;
    u.id = parse_number<UserId>(l.fields[0], l, "users");
    u.reg_month = parse_number<int>(l.fields[1], l, "users");
    if (l.fields.size() > 2 && !l.fields[2].empty()) u.m = parse_number<double>(l.fields[2], l, "users");
    if (l.fields.size() > 3 && !l.fields[3].empty()) u.intrinsic = parse_number<double>(l.fields[3], l, "users");
    if (!(u.m > 0.0))
      fail(ErrorKind::kParse, kModule, "users line " + std::to_string(l.number) + ": m must be > 0");
    if (!(u.intrinsic >= 0.0))
      fail(ErrorKind::kParse, kModule, "users line " + std::to_string(l.number) + ": intrinsic must be >= 0");
    users.push_back(u);
  }
  std::vector<Edge> edges;
  for (const Line& l : read_table(edges_csv, {"u", "v", "month"}, 3, "edges")) {
    edges.push_back({parse_number<UserId>(l.fields[0], l, "edges"), parse_number<UserId>(l.fields[1], l, "edges"),
                     parse_number<int>(l.fields[2], l, "edges")});
  }
  return TemporalGraph(std::move(users), std::move(edges));
}

TemporalGraph load_graph(const std::string& edges_path, const std::string& users_path) {
  return parse_graph(read_file(edges_path), read_file(users_path));
}

std::string format_edges(const TemporalGraph& graph) {
  std::vector<Edge> edges = graph.edges();
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.u, a.month, a.v) < std::tie(b.u, b.month, b.v);
  });
  std::string out = "u,v,month\n";
  for (const Edge& e : edges)
    out += std::to_string(e.u) + "," + std::to_string(e.v) + "," + std::to_string(e.month) + "\n";
  return out;
}

std::string format_users(const TemporalGraph& graph) {
  std::string out = "user,reg_month,m,intrinsic\n";
  for (const UserInfo& u : graph.users())
    out += std::to_string(u.id) + "," + std::to_string(u.reg_month) + "," + format_double(u.m) + "," +
           format_double(u.intrinsic) + "\n";
  return out;
}

ProfileStore parse_profiles(const std::string& csv) {
  ProfileStore store;
  for (const Line& l : read_table(csv, {"user", "terms"}, 1, "profiles")) {
    const UserId id = parse_number<UserId>(l.fields[0], l, "profiles");
    std::vector<std::int64_t> terms;
    if (l.fields.size() > 1 && !l.fields[1].empty())
      for (const std::string& t : split(l.fields[1], ';')) terms.push_back(parse_number<std::int64_t>(t, l, "profiles"));
    if (store.contains(id))
      fail(ErrorKind::kIntegrity, kModule, "profiles line " + std::to_string(l.number) + ": duplicate user");
    store.set(id, std::move(terms));
  }
  return store;
}

ProfileStore load_profiles(const std::string& path) { return parse_profiles(read_file(path)); }

std::string format_profiles(const ProfileStore& profiles) {
  std::map<UserId, const std::vector<std::int64_t>*> sorted;
  for (const auto& [id, terms] : profiles.all()) sorted[id] = &terms;
  std::string out = "user,terms\n";
  for (const auto& [id, terms] : sorted) {
    out += std::to_string(id) + ",";
    for (std::size_t k = 0; k < terms->size(); ++k) {
      if (k) out += ";";
      out += std::to_string((*terms)[k]);
    }
    out += "\n";
  }
  return out;
}

std::vector<FeatureRecord> parse_records(const std::string& csv) {
  std::vector<FeatureRecord> out;
  for (const Line& l : read_table(csv, {"j", "h", "V", "C", "S", "N", "R"}, 6, "records")) {
    FeatureRecord r;
    r.j = parse_number<UserId>(l.fields[0], l, "records");
    r.h = parse_number<UserId>(l.fields[1], l, "records");
    r.V = parse_number<double>(l.fields[2], l, "records");
    r.C = parse_number<double>(l.fields[3], l, "records");
    r.S = parse_number<double>(l.fields[4], l, "records");
    r.N = parse_number<double>(l.fields[5], l, "records");
    if (l.fields.size() > 6 && !l.fields[6].empty()) {
      r.R = parse_number<int>(l.fields[6], l, "records");
      if (r.R != 0 && r.R != 1)
        fail(ErrorKind::kParse, kModule, "records line " + std::to_string(l.number) + ": R must be 0 or 1");
    }
    for (double v : {r.V, r.C, r.S, r.N})
      if (!(v > 0.0))
        fail(ErrorKind::kParse, kModule, "records line " + std::to_string(l.number) + ": features must be > 0");
    out.push_back(r);
  }
  return out;
}

std::vector<FeatureRecord> load_records(const std::string& path) { return parse_records(read_file(path)); }

std::string format_records(const std::vector<FeatureRecord>& records) {
  std::string out = "j,h,V,C,S,N,R\n";
  for (const auto& r : records) {
    out += std::to_string(r.j) + "," + std::to_string(r.h) + "," + format_double(r.V) + "," + format_double(r.C) +
           "," + format_double(r.S) + "," + format_double(r.N) + ",";
    if (r.R >= 0) out += std::to_string(r.R);
    out += "\n";
  }
  return out;
}

Theta parse_theta(const std::string& text) {
  std::istringstream in(text);
  std::string raw;
  std::array<double, Theta::kSize> v{};
  std::size_t k = 0, number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.empty()) continue;
    auto fields = split(raw, '\t');
    const Line line{number, fields};
    if (fields.size() != 2 || k >= Theta::kSize || fields[0] != Theta::names()[k])
      fail(ErrorKind::kParse, kModule,
           "theta line " + std::to_string(number) + ": expected '" +
               (k < Theta::kSize ? std::string(Theta::names()[k]) : std::string("end of file")) + "<TAB>value'");
    v[k++] = parse_number<double>(fields[1], line, "theta");
  }
  if (k != Theta::kSize) fail(ErrorKind::kParse, kModule, "theta file has " + std::to_string(k) + " of 18 parameters");
  Theta t = Theta::from_array(v);
  t.validate();
  return t;
}

Theta load_theta(const std::string& path) { return parse_theta(read_file(path)); }

std::string format_theta(const Theta& theta) {
  std::string out;
  const auto v = theta.to_array();
  for (std::size_t i = 0; i < Theta::kSize; ++i) out += std::string(Theta::names()[i]) + "\t" + format_double(v[i]) + "\n";
  return out;
}

std::string format_recommendations(const RecommendationList& list) {
  std::string out = "j,h,probability\n";
  for (const auto& r : list.items)
    out += std::to_string(r.j) + "," + std::to_string(r.h) + "," + format_double(r.probability) + "\n";
  return out;
}

std::string format_metrics(const std::vector<MetricsRow>& rows) {
  std::string out = "method,month,precision,avg_utility\n";
  for (const auto& r : rows)
    out += r.method + "," + r.month + "," + format_double(r.precision) + "," + format_double(r.avg_utility) + "\n";
  return out;
}

std::vector<MetricsRow> parse_metrics(const std::string& csv) {
  std::vector<MetricsRow> rows;
  for (const Line& l : read_table(csv, {"method", "month", "precision", "avg_utility"}, 4, "metrics"))
    rows.push_back({l.fields[0], l.fields[1], parse_number<double>(l.fields[2], l, "metrics"),
                    parse_number<double>(l.fields[3], l, "metrics")});
  return rows;
}

}  // namespace linkrec::io

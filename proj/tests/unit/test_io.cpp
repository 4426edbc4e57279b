#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

#include "../support/random_theta.hpp"
#include "helpers.hpp"
#include "linkrec/io.hpp"
#include "linkrec/synth.hpp"

using namespace linkrec;

namespace {
std::string message(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}
}  // namespace

TEST_CASE("graph files") {
  const std::string users = "user,reg_month\n1,1\n2,1\n3,2\n";
  const auto g = io::parse_graph("u,v,month\n1,2,1\n2,3,2\n", users);
  CHECK(g.num_edges() == 2);
  CHECK(g.users()[2].m == 1.0);
  CHECK(th::error_kind([&] { io::parse_graph("u,v,month\n1,9,1\n", users); }) == ErrorKind::kIntegrity);
  const auto msg = message([&] { io::parse_graph("u,v,month\n1,2,1\n2,x,2\n", users); });
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("data_io: parse") != std::string::npos);
  CHECK(th::error_kind([&] { io::parse_graph("a,b\n", users); }) == ErrorKind::kParse);
  CHECK(th::error_kind([&] { io::parse_graph("u,v,month\n1,2\n", users); }) == ErrorKind::kParse);
}

TEST_CASE("round trips are lossless") {
  SynthConfig sc;
  sc.total_users = 200;
  sc.months = 4;
  auto [g, p] = gen_network(sc);
  // Non-default weights to exercise the optional columns.
  std::vector<UserInfo> users = g.users();
  users[3].m = 0.1 + 1.0 / 3.0;
  users[4].intrinsic = 2.0 / 7.0;
  g = TemporalGraph(users, g.edges());
  const auto g2 = io::parse_graph(io::format_edges(g), io::format_users(g));
  CHECK(io::format_edges(g2) == io::format_edges(g));
  CHECK(io::format_users(g2) == io::format_users(g));
  CHECK(g2.users()[3].m == g.users()[3].m);
  CHECK(io::format_profiles(io::parse_profiles(io::format_profiles(p))) == io::format_profiles(p));

  CounterRng rng(71);
  std::vector<FeatureRecord> recs;
  for (int i = 0; i < 50; ++i) {
    auto r = brute::random_record(rng);
    r.j = i;
    r.h = i + 100;
    if (i % 3 == 0) r.R = -1;
    recs.push_back(r);
  }
  const auto back = io::parse_records(io::format_records(recs));
  REQUIRE(back.size() == recs.size());
  for (std::size_t i = 0; i < recs.size(); ++i) {
    CHECK(back[i].V == recs[i].V);
    CHECK(back[i].N == recs[i].N);
    CHECK(back[i].R == recs[i].R);
  }
  const Theta t = brute::random_theta(rng);
  CHECK(io::parse_theta(io::format_theta(t)) == t);

  std::vector<MetricsRow> rows{{"ours", "3", 0.1, -1.0 / 3}, {"ours", "mean", 0.1, 2.5}};
  const auto mr = io::parse_metrics(io::format_metrics(rows));
  CHECK(mr[0].avg_utility == rows[0].avg_utility);
  CHECK(mr[1].month == "mean");
}

TEST_CASE("theta file order and validity") {
  std::string text = io::format_theta(Theta{});
  CHECK(text.rfind("p0\t", 0) == 0);
  std::string swapped = text;
  swapped.replace(0, 2, "p1");
  CHECK(th::error_kind([&] { io::parse_theta(swapped); }) == ErrorKind::kParse);
  Theta bad;
  bad.lamC[1] = -1;
  CHECK(th::error_kind([&] { io::parse_theta(io::format_theta(bad)); }) == ErrorKind::kInvalidArgument);
}

TEST_CASE("atomic write replaces content") {
  const auto path = (std::filesystem::temp_directory_path() / "linkrec_io_test.txt").string();
  io::atomic_write(path, "first");
  io::atomic_write(path, "second");
  CHECK(io::read_file(path) == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove(path);
  CHECK(th::error_kind([] { io::read_file("/nonexistent/file"); }) == ErrorKind::kIo);
}

TEST_CASE("records reject bad values") {
  CHECK(th::error_kind([] { io::parse_records("j,h,V,C,S,N,R\n1,2,0,1,1,1,1\n"); }) == ErrorKind::kParse);
  CHECK(th::error_kind([] { io::parse_records("j,h,V,C,S,N,R\n1,2,1,1,1,1,2\n"); }) == ErrorKind::kParse);
  CHECK(io::parse_records("j,h,V,C,S,N\n1,2,1,1,1,1\n")[0].R == -1);
}

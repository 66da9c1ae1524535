#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>

#include "multdens/cli.hpp"

using namespace multdens;
using namespace multdens::cli;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "multdens");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("parse shapes") {
  const RunConfig limit = parse_args(words("limit --A 3,2 --B 1 --q 1"));
  CHECK(limit.command == Command::limit);
  CHECK(limit.a == std::vector<u64>{2, 3});
  CHECK(limit.b == std::vector<u64>{1});

  const RunConfig density =
      parse_args(words("density --A 2 --B 3 --q 1 --family const:0,1 --r 11 --x 10000 --format json"));
  CHECK(density.command == Command::density);
  CHECK(density.x_grid == std::vector<u64>{10000});
  CHECK(density.format == OutputFormat::json);
  CHECK(density.exponents == "11");

  const RunConfig gen = parse_args(words("truncation --A-gen primes:1,30"));
  CHECK(gen.a.size() == 10);
  CHECK(parse_args(words("truncation --A-gen ranges:1-3,7-8")).a == std::vector<u64>{1, 2, 3, 7, 8});
}

TEST_CASE("bad arguments are usage errors") {
  CHECK_THROWS_AS(parse_args(words("limit --family const:1,1")), UsageError);
  CHECK_THROWS_AS(parse_args(words("limit --A 2,x")), UsageError);
  CHECK_THROWS_AS(parse_args(words("limit --A 0")), UsageError);
  CHECK_THROWS_AS(parse_args(words("limit --r 21")), UsageError);
  CHECK_THROWS_AS(parse_args(words("density --x-grid 100,10")), UsageError);
  CHECK_THROWS_AS(parse_args(words("density --x 10 --x-grid 10,20")), UsageError);
  CHECK_THROWS_AS(parse_args(words("limit --format xml")), UsageError);
  CHECK(invoke({"frobnicate"}).code == kUsage);
  CHECK(invoke({}).code == kUsage);
  const Outcome bad = invoke(words("limit --family const:1,1"));
  CHECK(bad.code == kUsage);
  CHECK(lines(bad.err) == 1);
  CHECK(bad.err.rfind("error[usage]", 0) == 0);
}

TEST_CASE("canonical form round trips") {
  const char* cases[] = {
      "limit --A 3,2 --B 1",
      "density --A 2 --B 3 --family const:0.5,2 --r 01 --x 500 --format json",
      "sums --q0 2 --q1 3 --q2 5 --family zeropow:0.5 --x-grid 10,20 --threads 3",
      "truncation --A-gen primes:1,50 --N-grid 2,10 --sieve-limit 999",
      "theorem5 --family shrink:1,0.5 --A 2 --B 3",
  };
  for (const char* text : cases) {
    const RunConfig c = parse_args(words(text));
    const RunConfig again = parse_args(words(c.canonical()));
    INFO(text);
    CHECK(again == c);
    CHECK(again.canonical() == c.canonical());
  }
}

TEST_CASE("limit and bound outputs") {
  const Outcome limit = invoke(words("limit --A 2 --B 3 --q 1"));
  CHECK(limit.code == kOk);
  CHECK(limit.out == "density,decimal\n1/12,0.08333333333333333\n");

  const Outcome ie = invoke(words("limit --A 2,3 --B 1"));
  CHECK(ie.out.find("1/2,0.5") != std::string::npos);

  const Outcome bound = invoke(words("bound --A 2 --B 3 --q 1"));
  CHECK(bound.code == kOk);
  CHECK(bound.out.find("1/2,") != std::string::npos);
  CHECK(bound.out.find("11/12,") != std::string::npos);
  CHECK(bound.out.find(",true,false") != std::string::npos);
}

TEST_CASE("enumerate output") {
  const Outcome r = invoke(words("enumerate --x 4 --family const:0,1"));
  CHECK(r.code == kOk);
  CHECK(r.out == "m,n\n1,2\n1,3\n2,3\n1,4\n3,4\n");
}

TEST_CASE("json output mirrors rows") {
  const Outcome r = invoke(words("density --A 2 --B 3 --x-grid 100,1000 --format json"));
  REQUIRE(r.code == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["rows"].size() == 2);
  CHECK(j["meta"]["version"] == kVersion);
  CHECK(j["meta"]["sieve_limit"].get<u64>() >= 1000);
  CHECK(j["rows"][1]["x"] == 1000);
}

TEST_CASE("output is identical across worker counts") {
  for (const char* cmd : {"density --A 2,5 --B 3 --x-grid 100,3000 --r 10", "sums --q0 2 --q1 3 --q2 5 --x-grid 500,2000",
                          "truncation --A-gen primes:1,100 --N-grid 2,10,100 --x-grid 1000,50000",
                          "theorem2 --A 2 --B 3 --x-grid 1,50,2000"}) {
    auto one = words(cmd), four = words(cmd);
    one.insert(one.end(), {"--threads", "1"});
    four.insert(four.end(), {"--threads", "4"});
    const Outcome a = invoke(one), b = invoke(four);
    INFO(cmd);
    CHECK(a.code == kOk);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("domain errors map to exit codes") {
  const Outcome pre = invoke(words("bound --A 2 --B 4"));
  CHECK(pre.code == kPrecondition);
  CHECK(lines(pre.err) == 1);

  const Outcome cap = invoke(words("limit --A 3,5,7,11,13 --B 2,4,8,16,32"));
  CHECK(cap.code == kCapacity);
  CHECK(lines(cap.err) == 1);

  const Outcome empty = invoke(words("density --family const:0,1/1000 --x 100"));
  CHECK(empty.code == kEmptyFarey);
  CHECK(lines(empty.err) == 1);

  const Outcome regime = invoke(words("theorem5 --family shrink:1,1 --A 2 --B 3 --x 100"));
  CHECK(regime.code == kPrecondition);

  const Outcome table = invoke(words("theorem2 --A 2 --B 3 --x-grid 1,100"));
  CHECK(table.code == kOk);
  CHECK(table.out.find(",empty") != std::string::npos);
}

TEST_CASE("help lists columns") {
  const Outcome h = invoke({"--help"});
  CHECK(h.code == kOk);
  CHECK(h.out.find("lemma-check") != std::string::npos);
  CHECK(h.out.find("MULTDENS_THREADS") != std::string::npos);
}

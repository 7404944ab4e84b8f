#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "golden_cases.hpp"

using wpl_test::kGoldenCases;
using wpl_test::read_golden;
using wpl_test::run_cli;

TEST_CASE("golden outputs are byte-identical") {
  for (const auto& c : kGoldenCases) {
    CAPTURE(c.args);
    wpl_test::CliResult r = run_cli(c.args);
    CHECK(r.status == 0);
    CHECK(r.out == read_golden(c.file));
  }
}

TEST_CASE("runs are deterministic") {
  wpl_test::CliResult a = run_cli("roots --weights 2,3 --max-height 6 --delta -1..2");
  wpl_test::CliResult b = run_cli("roots --weights 2,3 --max-height 6 --delta -1..2");
  CHECK(a.out == b.out);
  CHECK(a.status == 0);
  CHECK(!a.out.empty());
}

TEST_CASE("weights accept the JSON form") {
  wpl_test::CliResult r =
      run_cli("classify --weights '{\"weights\":[2,2],\"points\":[\"a\",\"b\"]}' --vector \"d=2\"");
  CHECK(r.status == 0);
  CHECK(r.out == read_golden("classify_22.txt"));
}

TEST_CASE("stdin batch classify") {
  wpl_test::CliResult r = run_cli("classify --weights 2,2 --stdin", "d=2\n*=1\n");
  CHECK(r.status == 0);
  std::size_t lines = 0;
  for (char c : r.out) lines += c == '\n';
  CHECK(lines == 2);
  CHECK(r.out.find("\"imaginary\"") != std::string::npos);
  CHECK(r.out.find("\"real\"") != std::string::npos);
}

TEST_CASE("stdin batch reduce") {
  wpl_test::CliResult r = run_cli("reduce --weights 2,2 --stdin", "*=1; [1,1]=1\n");
  CHECK(r.status == 0);
  CHECK(r.out.find("\"terminal_case\":\"simple_root\"") != std::string::npos);
}

TEST_CASE("encode output feeds back into classify") {
  wpl_test::CliResult enc = run_cli("encode --weights 2,3 --object \"S[2,0]^1\"");
  CHECK(enc.status == 0);
  std::string vec = enc.out.substr(0, enc.out.find('\n'));
  wpl_test::CliResult cls = run_cli("classify --weights 2,3 --vector \"" + vec + "\"");
  CHECK(cls.status == 0);
  CHECK(cls.out.find("\"count\":\"one\"") != std::string::npos);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run_cli("classify --weights 2,2 --vector \"[9,9]=1\"").status == 2);
  CHECK(run_cli("classify --weights 2,2").status == 2);
  CHECK(run_cli("classify --weights 0,2 --vector \"d=1\"").status == 2);
  CHECK(run_cli("encode --weights 2,2 --object \"Q^1\"").status == 2);
  CHECK(run_cli("encode --weights 2,2 --object \"S[1,1]^0\"").status == 2);
  CHECK(run_cli("pair --weights 2,2 --u \"d=1\" --v \"[1,2]=1\"").status == 2);
  CHECK(run_cli("roots --weights 2,2 --max-height 3 --delta bogus").status == 2);
}

TEST_CASE("healthy relation table exits zero") {
  CHECK(run_cli("check-relations --weights 2,2 --truncation 1").status == 0);
}

TEST_CASE("enumeration resource bound surfaces as an error") {
  wpl_test::CliResult r = run_cli("roots --weights 2,3,5 --max-height 29 --delta 0..0 --limit 10");
  CHECK(r.status == 2);
  CHECK(r.out.empty());
}

// CLI invocation helpers and the golden-file case table, shared by the
// unit test and the acceptance suite.

#pragma once

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <sys/wait.h>

namespace wpl_test {

struct CliResult {
  int status = -1;
  std::string out;
};

inline CliResult run_cli(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd = std::string(WPL_CLI_PATH) + " " + args + " 2>/dev/null";
  if (!stdin_data.empty()) {
    std::string tmp = std::string(WPL_CLI_PATH) + ".stdin.tmp";
    std::ofstream f(tmp, std::ios::binary);
    f << stdin_data;
    f.close();
    cmd = cmd + " < " + tmp;
  }
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed");
  CliResult r;
  std::array<char, 4096> buf;
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    r.out.append(buf.data(), got);
  }
  int rc = pclose(pipe);
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  return r;
}

inline std::string read_golden(const std::string& name) {
  std::ifstream f(std::string(WPL_GOLDEN_DIR) + "/" + name, std::ios::binary);
  if (!f.good()) throw std::runtime_error("missing golden file " + name);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

struct GoldenCase {
  const char* file;
  const char* args;
};

inline constexpr GoldenCase kGoldenCases[] = {
    {"classify_22.txt", "classify --weights 2,2 --vector \"d=2\""},
    {"classify_23.txt", "classify --weights 2,3 --vector \"*=1; d=-3\""},
    {"classify_235.txt", "classify --weights 2,3,5 --vector \"[3,4]=1; d=2\""},
    {"roots_22.txt", "roots --weights 2,2 --max-height 3 --delta 0..0"},
    {"roots_23.txt", "roots --weights 2,3 --max-height 10 --delta 0..0"},
    {"roots_235.txt", "roots --weights 2,3,5 --max-height 29 --delta 0..0"},
    {"pair_22.txt", "pair --weights 2,2 --u \"d=1\" --v \"d=1\""},
    {"pair_23.txt", "pair --weights 2,3 --u \"*=1; [1,1]=1\" --v \"*=1\""},
    {"pair_235.txt", "pair --weights 2,3,5 --u \"*=1; [3,2]=2; d=-1\" --v \"[3,1]=1; [3,3]=-1\""},
    {"encode_22.txt", "encode --weights 2,2 --object \"S[1,1]^2\""},
    {"encode_23.txt", "encode --weights 2,3 --object \"O(k=-2;a=1,2)\""},
    {"encode_235.txt", "encode --weights 2,3,5 --object \"Sgen^4\""},
    {"reduce_22.txt", "reduce --weights 2,2 --vector \"*=1; [1,1]=1\""},
    {"reduce_23.txt", "reduce --weights 2,3 --vector \"*=1; [1,1]=-1\""},
    {"reduce_235.txt",
     "reduce --weights 2,3,5 --vector \"*=2; [1,1]=1; [2,1]=1; [2,2]=1; [3,1]=1; [3,2]=1; "
     "[3,3]=1; [3,4]=1; d=-1\""},
    {"relations_22.txt", "check-relations --weights 2,2 --truncation 2"},
    {"relations_23.txt", "check-relations --weights 2,3 --truncation 2"},
    {"relations_235.txt", "check-relations --weights 2,3,5 --truncation 1"},
};

}  // namespace wpl_test

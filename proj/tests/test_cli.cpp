#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "sgprime");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = sgprime::cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, FrobeniusFromGenerators) {
  auto r = run({"frobenius", "--gens", "3,5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("f=7 g=4 e=2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("gaps: 1,2,4,7"), std::string::npos) << r.out;
}

TEST(Cli, FrobeniusFromInterval) {
  auto r = run({"frobenius", "--p", "19", "--lambda", "1/1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("f=101"), std::string::npos) << r.out;
  auto j = run({"--format", "json", "frobenius", "--p", "23", "--lambda", "1"});
  auto parsed = nlohmann::json::parse(j.out);
  EXPECT_EQ(parsed["f"], 102);
  EXPECT_EQ(parsed["e"], 6);
}

TEST(Cli, ExitCodes) {
  auto gcd = run({"frobenius", "--gens", "4,6"});
  EXPECT_EQ(gcd.code, 2);
  EXPECT_NE(gcd.err.find("gcd"), std::string::npos);
  EXPECT_EQ(run({"frobenius", "--gens", "3,5", "--bogus"}).code, 2);
  EXPECT_EQ(run({"frobenius", "--p", "21", "--lambda", "1"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, LambdaScanRows) {
  auto r2 = run({"lambda-scan", "--p", "2", "--x", "2"});
  EXPECT_EQ(r2.code, 0);
  EXPECT_EQ(r2.out, "p,a,b,x,f,ratio,F,in_D\n2,1,1,2.000000,1,0.500000,4,1\n");
  auto r19 = run({"lambda-scan", "--p", "19", "--x", "2"});
  EXPECT_EQ(r19.out, "p,a,b,x,f,ratio,F,in_D\n19,1,1,2.000000,101,5.315789,4,1\n");
}

TEST(Cli, LambdaScanLogsSkippedPoints) {
  auto r = run({"lambda-scan", "--p", "23", "--x", "11/10", "--x", "13/10"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("skipped lambda=1/10"), std::string::npos);
  EXPECT_EQ(r.out, "p,a,b,x,f,ratio,F,in_D\n,1,10,1.100000,,,22,0\n23,3,10,1.300000,615,26.739130,8,1\n");
}

TEST(Cli, LambdaScanUniformGridIsSortedAndDeterministic) {
  auto a = run({"lambda-scan", "--p", "101", "--grid-den", "4", "--grid-steps", "8", "--x", "3/2"});
  auto b = run({"--threads", "3", "lambda-scan", "--p", "101", "--x", "3/2", "--grid-den", "4", "--grid-steps", "8"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  std::istringstream in(a.out);
  std::string line;
  std::getline(in, line);
  double prev = 0;
  int rows = 0;
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::string field;
    for (int i = 0; i < 4; ++i) std::getline(ls, field, ',');
    double x = std::stod(field);
    EXPECT_GE(x, prev);
    prev = x;
    ++rows;
  }
  EXPECT_EQ(rows, 9);
}

TEST(Cli, FileOutputWithGnuplot) {
  auto dir = std::filesystem::temp_directory_path() / "sgprime_cli_test";
  std::filesystem::create_directories(dir);
  auto csv = dir / "scan.csv";
  auto r = run({"--output", csv.string(), "lambda-scan", "--p", "101", "--grid-den", "2", "--grid-steps", "4",
                "--gnuplot"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(slurp(csv).rfind("p,a,b,x,f,ratio,F,in_D\n", 0), 0u);
  auto gp = slurp(dir.string() + "/scan.csv.gp");
  EXPECT_NE(gp.find(csv.string()), std::string::npos);
  EXPECT_FALSE(std::filesystem::exists(dir / "scan.csv.tmp"));
  EXPECT_EQ(run({"lambda-scan", "--p", "101", "--x", "2", "--gnuplot"}).code, 2);
}

TEST(Cli, FailedRunLeavesNoFile) {
  auto dir = std::filesystem::temp_directory_path() / "sgprime_cli_test";
  std::filesystem::create_directories(dir);
  auto out = dir / "never.json";
  std::filesystem::remove(out);
  EXPECT_EQ(run({"--output", out.string(), "goldbach", "--N", "21", "--m", "4", "--delta", "1/5"}).code, 2);
  EXPECT_FALSE(std::filesystem::exists(out));
}

TEST(Cli, WilfSummary) {
  auto r = run({"wilf", "--range", "8:40"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("33 semigroups, all hold"), std::string::npos) << r.err;
  EXPECT_EQ(r.out.rfind("n,p,e,f,g,sporadic,lhs,rhs,holds,eq3_rhs,f_lt_eq3_rhs\n8,19,5,101,51,51,1/2,4/5,1,", 0), 0u)
      << r.out.substr(0, 200);
}

TEST(Cli, Table3Summary) {
  auto r = run({"table3", "--range", "5:60"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("56 rows, all pass"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("\n5,11,27,odd,"), std::string::npos);
  EXPECT_EQ(run({"table3", "--range", "4:10"}).code, 2);
  EXPECT_EQ(run({"table3", "--range", "10"}).code, 2);
}

TEST(Cli, GoldbachCertificate) {
  auto r = run({"goldbach", "--N", "20", "--m", "4", "--delta", "1/5"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "{\"N\":20,\"m\":4,\"parts\":[5,5,5,5],\"max_deviation\":0,\"bound\":\"delta*N\",\"delta\":\"1/5\"}\n");
}

TEST(Cli, DensityAndSn) {
  auto d = run({"density", "--p", "3"});
  EXPECT_EQ(d.out, "p,density_num,density_den,density\n3,1,2,0.500000\n");
  auto s = run({"sn", "--n", "3"});
  EXPECT_EQ(s.out, "n,p_n,truncation,f_n,certificate_ok\n3,5,26,9,1\n");
}

TEST(Cli, EnvironmentOverridesSieveLimit) {
  ::setenv("SGPRIME_SIEVE_LIMIT", "1", 1);
  EXPECT_EQ(run({"sn", "--n", "3"}).code, 2);
  ::setenv("SGPRIME_SIEVE_LIMIT", "many", 1);
  EXPECT_EQ(run({"sn", "--n", "3"}).code, 2);
  EXPECT_EQ(run({"--sieve-limit", "5000", "sn", "--n", "3"}).code, 0);
  ::setenv("SGPRIME_SIEVE_LIMIT", "5000", 1);
  EXPECT_EQ(run({"sn", "--n", "3"}).code, 0);
  ::unsetenv("SGPRIME_SIEVE_LIMIT");
  ::setenv("SGPRIME_THREADS", "0", 1);
  EXPECT_EQ(run({"sn", "--n", "3"}).code, 2);
  ::unsetenv("SGPRIME_THREADS");
}

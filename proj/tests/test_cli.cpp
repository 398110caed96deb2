#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "wafm/cli.hpp"

using namespace wafm;
using wafm::testing::fixture;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_command(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("wafm-test-" + name)).string();
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("weight of a word") {
    const auto r = run({"weight", fixture("two-branch.wa"), "--word", "a,a,a"});
    CHECK(r.code == 0);
    CHECK(r.out == "WEIGHT=8\n");
    CHECK(run({"weight", fixture("two-branch.wa"), "--word", "<empty>"}).out == "WEIGHT=2\n");
    const auto mm = run({"weight", fixture("mpg.wa"), "--semiring", "min-min", "--word",
                         "addTeam,addSolitaire,addProcMod,addTeam,addTeam,addChess,addBT"});
    CHECK(mm.out == "WEIGHT={BT=1,ProcMod=1,Team=1,Player=1,Solitaire=1,Chess=2}\n");
  }

  TEST_CASE("acceptance") {
    CHECK(run({"accepts", fixture("mpg.wa"), "--word", "addBT"}).code == 1);
    CHECK(run({"accepts", fixture("mpg.wa"), "--word", "addTeam,addSolitaire,addWiFi"}).code == 0);
  }

  TEST_CASE("decision problems") {
    const auto ne = run({"nonempty", fixture("mpg.wa"), "--config", "{Team=1,Player=1,Solitaire=1,WiFi=3}", "--k",
                         "1500", "--order", "Player,Team,ProcMod"});
    CHECK(ne.code == 0);
    CHECK(ne.out.find("VERDICT=true") != std::string::npos);
    CHECK(ne.out.find("WITNESS=addTeam,addSolitaire,addWiFi") != std::string::npos);
    CHECK(ne.out.find("WITNESS_WEIGHT={Team=1,Player=1,Solitaire=1,WiFi=3}") != std::string::npos);

    const auto un = run({"universal", fixture("mpg.wa"), "--config", "{Team=1,Player=1,Solitaire=1,WiFi=3}"});
    CHECK(un.code == 1);
    CHECK(un.out.rfind("PROBLEM=universality ", 0) == 0);
    CHECK(un.out.find("EXACT=true") != std::string::npos);

    CHECK(run({"lowerbound", fixture("mpg.wa"), "--k", "200"}).code == 0);
    CHECK(run({"upperbound", fixture("mpg.wa"), "--exact-cycles"}).code == 1);
    const auto ub = run({"upperbound", fixture("variants/no-wifi-chess-procmod.wa"), "--k", "2500"});
    CHECK(ub.code == 0);
    CHECK(ub.out.find("BOUND=") != std::string::npos);
  }

  TEST_CASE("projection writes a document") {
    const std::string out = temp_path("projected.wa");
    const auto r = run({"project", fixture("bt-wifi.wa"), "--config", "{ProcMod=1,BT=1}", "-o", out});
    CHECK(r.code == 0);
    CHECK(r.out.find("REMOVED=1") != std::string::npos);
    const std::string text = read_file(out);
    CHECK(text.find("addBT {") != std::string::npos);
    CHECK(text.find("q4 q5 addWiFi") == std::string::npos);
    std::filesystem::remove(out);
    CHECK(run({"project", fixture("mpg.wa"), "--config", "{}", "-o", out}).code == 2);
  }

  TEST_CASE("validation") {
    CHECK(run({"validate", fixture("mpg.cfm"), "--config", "{Team=2,Player=2,Chess=2}"}).code == 0);
    const auto bad = run({"validate", fixture("mpg.cfm"), "--config", "{BT=1,ProcMod=4,Team=2,Player=30,Solitaire=1}"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("VIOLATION exclude:") != std::string::npos);
  }

  TEST_CASE("consistency in both directions") {
    const auto w = run({"consistency", fixture("mpg.cfm"), fixture("mpg.wa"), "--word",
                        "addTeam,addSolitaire,addProcMod,addTeam,addTeam,addChess,addBT"});
    CHECK(w.code == 0);
    CHECK(w.out.rfind("DIRECTION=word-to-config ", 0) == 0);
    const auto c = run({"consistency", fixture("mpg.cfm"), fixture("mpg.wa"), "--config",
                        "{Team=2,Player=2,Chess=2,WiFi=3,ProcMod=3}"});
    CHECK(c.code == 0);
    CHECK(c.out.find("WITNESS=addTeam,addTeam,addChess,addWiFi") != std::string::npos);
    CHECK(run({"consistency", fixture("mpg.cfm"), fixture("mpg.wa")}).code == 2);
  }

  TEST_CASE("usage and input errors exit with 2") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"weight", fixture("two-branch.wa")}).code == 2);
    CHECK(run({"weight", fixture("missing.wa"), "--word", "a"}).code == 2);
    CHECK(run({"weight", fixture("two-branch.wa"), "--word", "b"}).code == 2);
    CHECK(run({"nonempty", fixture("mpg.wa"), "--config", "{Team=1", "--k", "5"}).code == 2);
    CHECK(run({"nonempty", fixture("mpg.wa"), "--config", "{}", "--k", "0"}).code == 2);
    const auto e = run({"nonempty", fixture("mpg.wa"), "--config", "{Nope=1}"});
    CHECK(e.code == 2);
    CHECK_FALSE(e.err.empty());
  }

  TEST_CASE("bench writes csv files") {
    const std::string plan = temp_path("plan.txt");
    const std::string csv = temp_path("bench.csv");
    const std::string corr = temp_path("correctness.csv");
    {
      std::ofstream p(plan);
      p << "automaton mutant " << fixture("variants/no-wifi-chess-procmod.wa") << "\n"
        << "config {Team=2, Player=3, Solitaire=2, ProcMod=1, BT=1}\nk 20 40\nrepetitions 1\nwarmups 0\n";
    }
    const auto r = run({"bench", plan, "-o", csv, "--correctness", corr});
    CHECK(r.code == 0);
    CHECK(read_file(csv).rfind("automaton,problem,config,k,repetition,wall_time_ms,verdict,exact\n", 0) == 0);
    CHECK(read_file(corr).rfind("automaton,k,correct,total,correctness\n", 0) == 0);
    for (const auto& f : {plan, csv, corr}) std::filesystem::remove(f);
  }
}

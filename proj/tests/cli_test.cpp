#include "domlab/cli.hpp"

#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

namespace domlab {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

std::string data(const std::string& name) { return std::string(DOMLAB_DATA_DIR) + "/" + name; }

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

TEST(Cli, HasseDotGolden) {
  auto r = run({"hasse", data("diamond.poset"), "--dot"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "digraph poset {\n"
            "  rankdir=BT;\n"
            "  \"bot\";\n"
            "  \"a\";\n"
            "  \"b\";\n"
            "  \"top\";\n"
            "  \"bot\" -> \"a\";\n"
            "  \"bot\" -> \"b\";\n"
            "  \"a\" -> \"top\";\n"
            "  \"b\" -> \"top\";\n"
            "}\n");
  EXPECT_EQ(run({"hasse", data("diamond.poset"), "--dot"}).out, r.out);
}

TEST(Cli, CheckPoset) {
  auto r = run({"check-poset", data("diamond.poset")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "elements: 4\ncovers: 4\nbottom: bot\ntop: top\ntree: no\nupper sets: 6\n");
}

TEST(Cli, ValOrderExitCodes) {
  auto yes = run({"val-order", data("diamond.poset"), "a:1", "top:1"});
  EXPECT_EQ(yes.code, 0);
  EXPECT_EQ(yes.out, "leq: true\nmove a -> top: 1\n");
  auto no = run({"val-order", data("diamond.poset"), "a:1", "b:1"});
  EXPECT_EQ(no.code, 1);
  EXPECT_EQ(no.out, "leq: false\nviolating: {a, top} (1 > 0)\n");
}

TEST(Cli, MaxBelowOfGridValuationIsItself) {
  auto r = run({"val-maxbelow", data("diamond.poset"), "a:1/3 b:1/3 top:1/3", "--grid", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "count: 1\na:1/3 b:1/3 top:1/3\n");
}

TEST(Cli, DemoFindsWitnesses) {
  auto r = run({"demo-failed-deflations", data("diamond.poset"), "--grid", "2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("modularity witness: U = {a, top}, V = {b, top}"), std::string::npos);
  EXPECT_NE(r.out.find("monotonicity witness: a:1 <= a:1/2 top:1/2"), std::string::npos);
  EXPECT_NE(r.out.find("maximal grid valuations below: 2"), std::string::npos);

  auto j = run({"--format", "json", "demo-failed-deflations", data("diamond.poset"), "--grid", "2"});
  EXPECT_EQ(j.code, 1);
  auto doc = nlohmann::json::parse(j.out);
  EXPECT_EQ(doc["a"]["witness"]["u"], (nlohmann::json{"a", "top"}));
  EXPECT_EQ(doc["a"]["witness"]["f_union"], "1/2");
  EXPECT_EQ(doc["c"]["cardinality"], 2);
  EXPECT_TRUE(doc["witness_found"].get<bool>());
}

TEST(Cli, JsonUpperSets) {
  auto r = run({"--format", "json", "upper-sets", data("diamond.poset")});
  ASSERT_EQ(r.code, 0);
  auto doc = nlohmann::json::parse(r.out);
  EXPECT_EQ(doc["count"], 6);
  EXPECT_EQ(doc["upper_sets"][0], nlohmann::json::array());
  EXPECT_EQ(doc["upper_sets"][5], (nlohmann::json{"bot", "a", "b", "top"}));
}

TEST(Cli, QuasiRetraction) {
  auto r = run({"quasi-retraction", data("chain3.poset"), data("chain2.poset"), data("collapse.map")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "retraction_law: true\nprojection_law: true\ncanonical: true\n"
            "canonical_section:\nlo -> {0}\nhi -> {1}\nwitness: none\n");
}

TEST(Cli, Lazy) {
  auto w = run({"lazy", "witness", "n2", "n:0:7", "n:1:2"});
  EXPECT_EQ(w.code, 0);
  EXPECT_EQ(w.out, "index: 8 8\nimage: {n:0:7, n:1:8}\n");
  EXPECT_EQ(run({"lazy", "witness", "t", "n:0:1", "n:0:1"}).code, 1);
  auto f = run({"lazy", "family", "t", "--index", "2", "n:0:1", "n:1:5", "bot"});
  EXPECT_EQ(f.out, "n:0:1 -> {n:0:1}\nn:1:5 -> {n:0:2, n:1:2}\nbot -> {bot}\n");
  EXPECT_EQ(run({"lazy", "family", "n2", "--index", "2", "omega"}).code, 2);
  EXPECT_EQ(run({"lazy", "family", "n2", "--index", "1", "--index2", "1", "top"}).code, 2);
  auto k = run({"lazy", "kind", "n2", "--depth", "1"});
  EXPECT_NE(k.out.find("elements: bot n:0:0 n:1:0 n:0:1 n:1:1 omega"), std::string::npos);
}

TEST(Cli, MonadLawsExhaustive) {
  auto r = run({"monad-laws", data("chain2.poset")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "pairs checked: 9\nlaws: hold\n");
  EXPECT_EQ(run({"--cap", "4", "monad-laws", data("chain2.poset")}).code, 2);
}

TEST(Cli, EnumeratePosets) {
  EXPECT_EQ(run({"enumerate-posets", "4"}).out, "count: 219\n");
  EXPECT_EQ(run({"enumerate-posets", "7"}).code, 2);
}

TEST(Cli, UsageAndInputErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"--format", "xml", "hasse", data("diamond.poset")}).code, 2);
  auto missing = run({"hasse", data("missing.poset")});
  EXPECT_EQ(missing.code, 2);
  EXPECT_NE(missing.err.find("error:"), std::string::npos);
  EXPECT_EQ(run({"val-order", data("diamond.poset"), "a:1/2", "top:1"}).code, 2);
  EXPECT_EQ(run({"--max-elements", "3", "hasse", data("diamond.poset")}).code, 2);
  EXPECT_EQ(run({"pathspace", data("diamond.poset"), "--grid", "2"}).code, 2);
}

TEST(Cli, ValPushAndPreimage) {
  auto push = run({"val-push", data("chain3.poset"), data("chain2.poset"), data("collapse.map"), "0:1/2 2:1/2"});
  EXPECT_EQ(push.out, "lo:1/2 hi:1/2\n");
  auto back = run({"val-push", data("chain3.poset"), data("chain2.poset"), data("collapse.map"), "lo:1/2 hi:1/2",
                   "--preimage"});
  EXPECT_EQ(back.out, "0:1/2 1:1/2\n");
}

TEST(Cli, Koenig) {
  auto r = run({"koenig", data("diamond.poset"), "top", "{a, b}", "{top}"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "a top\n");
  EXPECT_EQ(run({"koenig", data("diamond.poset"), "top", "{top}", "{a, b}"}).code, 2);
}

}  // namespace
}  // namespace domlab

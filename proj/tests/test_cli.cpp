#include <gtest/gtest.h>

#include <unistd.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "qdouble/cache.hpp"
#include "qdouble/errors.hpp"
#include "qdouble/modular.hpp"
#include "qdouble/orbifold/verify.hpp"
#include "qdouble/serialize.hpp"
#include "qdouble/workbench.hpp"

using namespace qdouble;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int status;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

GroupPtr group(const std::string& spec) { return std::make_shared<const GroupTable>(named_group(spec)); }

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("qdouble-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(p);
  return p;
}

bool bit_equal(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return std::memcmp(a.data(), b.data(), sizeof(cd) * a.size()) == 0;
}

}  // namespace

TEST(Serialize, CharacterTableRoundTripIsBitExact) {
  for (const char* spec : {"Z:1", "Z:6", "S:4", "Q8", "A:5"}) {
    const auto g = group(spec);
    const CharacterTable t = character_table(g);
    const json j = json::parse(to_json(t).dump());
    const CharacterTable back = character_table_from_json(j, t.classes);
    EXPECT_TRUE(bit_equal(t.chars, back.chars)) << spec;
    EXPECT_EQ(t.degrees, back.degrees);
    EXPECT_EQ(t.prime, back.prime);
    EXPECT_EQ(to_json(back).dump(), j.dump());
  }
}

TEST(Serialize, CharacterTableRejectsOtherGroup) {
  const CharacterTable t = character_table(group("S:3"));
  const CharacterTable z6 = character_table(group("Z:6"));
  EXPECT_THROW(character_table_from_json(to_json(t), z6.classes), ValidationError);
  json bad = to_json(t);
  bad["format"] = 99;
  EXPECT_THROW(character_table_from_json(bad, t.classes), ValidationError);
  json truncated = to_json(t);
  truncated["chars"].erase(0);
  EXPECT_THROW(character_table_from_json(truncated, t.classes), ValidationError);
}

TEST(Serialize, FusionAndModularRoundTrip) {
  const auto qd = make_quantum_double(group("S:3"));
  const FusionTensor f = fusion_tensor(qd);
  EXPECT_EQ(fusion_from_json(json::parse(to_json(f).dump())), f);
  const ModularData md = modular_data(qd);
  const ModularData back = modular_from_json(json::parse(to_json(md).dump()));
  EXPECT_TRUE(bit_equal(md.S, back.S));
  EXPECT_TRUE(bit_equal(md.T, back.T));
  EXPECT_EQ(back.simples, md.simples);
  EXPECT_EQ(back.convention, md.convention);
  EXPECT_EQ(back.normalization, "unitary");
  const json simples = to_json(md).at("simples");
  EXPECT_EQ(simples[3].at("dim"), 3);
  EXPECT_TRUE(simples[3].contains("centralizer_char_index"));
}

TEST(Serialize, ComplexAsPair) {
  EXPECT_EQ(complex_to_json(cd(1.5, -2.0)).dump(), "[1.5,-2.0]");
  EXPECT_THROW(complex_from_json(json::parse("[1]")), ValidationError);
}

TEST(Cache, MissThenHitReproducesTables) {
  const fs::path dir = fresh_dir("hit");
  const auto g = group("S:4");
  std::ostringstream warn;
  const CachedDouble first = cached_quantum_double(g, dir, warn);
  EXPECT_FALSE(first.hit);
  EXPECT_TRUE(fs::exists(cache_entry_path(dir, *g)));
  const CachedDouble second = cached_quantum_double(g, dir, warn);
  EXPECT_TRUE(second.hit);
  EXPECT_TRUE(warn.str().empty());
  EXPECT_EQ(cache_entry(*first.qd).dump(), cache_entry(*second.qd).dump());
  EXPECT_EQ(second.qd->simples(), first.qd->simples());
  for (int c = 0; c < first.qd->classes().count(); ++c)
    EXPECT_TRUE(bit_equal(first.qd->centralizer_table(c).chars, second.qd->centralizer_table(c).chars));
  fs::remove_all(dir);
}

TEST(Cache, EntryNameCarriesFormatVersion) {
  const auto g = group("Z:3");
  const std::string name = cache_entry_path("/x", *g).filename().string();
  EXPECT_NE(name.find("-v" + std::to_string(kJsonFormat) + ".json"), std::string::npos);
  EXPECT_NE(name.find(hash_hex(*g)), std::string::npos);
}

TEST(Cache, CorruptEntryIsRecomputedWithWarning) {
  const fs::path dir = fresh_dir("corrupt");
  const auto g = group("S:3");
  fs::create_directories(dir);
  std::ofstream(cache_entry_path(dir, *g)) << "{\"format\": 1, \"hash\": ";
  std::ostringstream warn;
  const CachedDouble r = cached_quantum_double(g, dir, warn);
  EXPECT_FALSE(r.hit);
  EXPECT_NE(warn.str().find("corrupt"), std::string::npos);
  std::ostringstream quiet;
  EXPECT_TRUE(cached_quantum_double(g, dir, quiet).hit);
  EXPECT_TRUE(quiet.str().empty());
  fs::remove_all(dir);
}

TEST(Cache, StaleFormatIsIgnored) {
  const fs::path dir = fresh_dir("stale");
  const auto g = group("Z:2");
  fs::create_directories(dir);
  json entry = cache_entry(*make_quantum_double(g));
  entry["format"] = kJsonFormat + 1;
  std::ofstream(cache_entry_path(dir, *g)) << entry.dump();
  std::ostringstream warn;
  EXPECT_FALSE(cached_quantum_double(g, dir, warn).hit);
  fs::remove_all(dir);
}

TEST(Cache, UnwritableDirectoryWarnsAndComputes) {
  // A regular file as parent makes the directory impossible to create, even as root.
  const fs::path blocker = fresh_dir("blocker");
  std::ofstream(blocker) << "x";
  std::ostringstream warn;
  const CachedDouble r = cached_quantum_double(group("S:3"), blocker / "cache", warn);
  EXPECT_FALSE(r.hit);
  EXPECT_EQ(r.qd->simple_count(), 8);
  EXPECT_NE(warn.str().find("warning"), std::string::npos);
  fs::remove(blocker);
}

TEST(Cli, GroupInfoS3) {
  const CliRun r = cli({"group-info", "--group", "S:3", "--format", "json"});
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("order"), 6);
  EXPECT_EQ(j.at("classes").size(), 3u);
  std::vector<int> orders;
  for (const auto& h : j.at("normal_subgroups")) orders.push_back(h.at("order"));
  EXPECT_EQ(orders, (std::vector<int>{1, 3, 6}));
}

TEST(Cli, TrivialGroupInfo) {
  const CliRun r = cli({"group-info", "--group", "Z:1"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("order 1"), std::string::npos);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(cli({"group-info", "--group", "S3"}).status, 2);
  EXPECT_EQ(cli({"group-info"}).status, 2);
  EXPECT_EQ(cli({"chartable", "--group", "S:3", "--tolerance", "1e-2"}).status, 2);
  EXPECT_EQ(cli({"chartable", "--group", "S:3", "--max-order", "6000"}).status, 2);
  EXPECT_EQ(cli({"chartable", "--group", "S:8", "--max-order", "100"}).status, 2);
  EXPECT_EQ(cli({"double", "bogus", "--group", "S:3"}).status, 2);
  EXPECT_EQ(cli({"nothing"}).status, 2);
  EXPECT_EQ(cli({"verify", "--group", "S:3", "--subgroup", "order:2"}).status, 2);
}

TEST(Cli, DoubleZ2Json) {
  const CliRun r = cli({"double", "--group", "Z:2", "--format", "json"});
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j.at("simples").size(), 4u);
  const double expected[4][4] = {{1, 1, 1, 1}, {1, 1, -1, -1}, {1, -1, 1, -1}, {1, -1, -1, 1}};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_NEAR(complex_from_json(j["S"][a][b]).real(), 0.5 * expected[a][b], 1e-12);
  // re-parse and re-emit bit-matches the emitting run
  EXPECT_EQ(j.dump(2) + "\n", r.out);
}

TEST(Cli, DoubleS3FusionHasInvariants) {
  const CliRun r = cli({"double", "fuse", "--group", "S:3", "--format", "json"});
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  FusionTensor f = fusion_from_json({{"format", kJsonFormat}, {"simples", j.at("simples")}, {"fusion", j.at("fusion")}});
  EXPECT_EQ(f.count(), 8);
  EXPECT_TRUE(fusion_violations(f, *make_quantum_double(group("S:3"))).empty());
  EXPECT_FALSE(j.contains("S"));
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"double", "--group", "D:4", "--format", "json"},
        std::vector<std::string>{"double", "--group", "D:4"},
        std::vector<std::string>{"verify", "--group", "Z:2*Z:2", "--format", "json"},
        std::vector<std::string>{"chartable", "--group", "A:4"}}) {
    const CliRun a = cli(args), b = cli(args);
    EXPECT_EQ(a.status, 0);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, CacheReuseChangesNoOutput) {
  const fs::path dir = fresh_dir("cli");
  const std::vector<std::string> plain{"double", "--group", "S:4", "--format", "json"};
  std::vector<std::string> cached = plain;
  cached.insert(cached.end(), {"--cache-dir", dir.string()});
  const CliRun ref = cli(plain), miss = cli(cached), hit = cli(cached);
  EXPECT_EQ(ref.out, miss.out);
  EXPECT_EQ(ref.out, hit.out);
  EXPECT_TRUE(hit.err.empty());
  EXPECT_TRUE(fs::exists(cache_entry_path(dir, *group("S:4"))));
  fs::remove_all(dir);
}

TEST(Cli, GeneratorFileInput) {
  const fs::path file = fresh_dir("gens");
  std::ofstream(file) << "3\n1 0 2\n1 2 0\n";
  const CliRun r = cli({"group-info", "--gens", file.string(), "--format", "json"});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(json::parse(r.out).at("order"), 6);
  EXPECT_EQ(cli({"group-info", "--gens", file.string(), "--group", "S:3"}).status, 2);
  fs::remove(file);
}

TEST(Cli, VerifyS3PassesWithSubgroup) {
  const CliRun r = cli({"verify", "--group", "S:3", "--subgroup", "A3", "--format", "json"});
  EXPECT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j.at("passed").get<bool>());
  bool found = false;
  for (const auto& c : j.at("checks"))
    if (c.at("name") == "subgroup_restriction") {
      found = true;
      EXPECT_EQ(c.at("data").at("verdict"), "expected-singular");
      EXPECT_EQ(c.at("data").at("subgroup_order"), 3);
    }
  EXPECT_TRUE(found);
}

TEST(Cli, VerifyKleinIncludesSimpleCurrentTable) {
  const CliRun r = cli({"verify", "--group", "Z:2*Z:2", "--format", "json"});
  EXPECT_EQ(r.status, 0);
  for (const auto& c : json::parse(r.out).at("checks"))
    if (c.at("name") == "simple_currents") {
      EXPECT_TRUE(c.at("data").at("applicable").get<bool>());
      EXPECT_EQ(c.at("data").at("dual_group_product").size(), 4u);
    }
}

TEST(Verify, FailuresBecomeEntries) {
  // A wrong-size subgroup option is reported as a failed check, not thrown.
  VerifyOptions opts;
  opts.orbifold = false;
  opts.subgroup = Subgroup{{0, 1}, false};
  const VerifyReport r = verify_group(make_quantum_double(group("S:3")), opts);
  const CheckEntry* e = r.find("subgroup_restriction");
  ASSERT_NE(e, nullptr);
  EXPECT_FALSE(e->passed);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("algebra_A"), nullptr);
}

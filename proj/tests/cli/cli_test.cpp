#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "bnlf/cli.hpp"
#include "bnlf/pipeline.hpp"
#include "bnlf/serialize.hpp"
#include "synthetic.hpp"

namespace bnlf {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result bnlf_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "bnlf");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("bnlf_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const auto recs = testing::make_home_corpus_records({1500, 3});
    write_text_file(path("data.jsonl"), records_to_jsonl(recs));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Result fit_to(const std::string& model) {
    return bnlf_cli({"fit", "--records", path("data.jsonl"), "--models", "finbert,roberta,bertweet", "--split", "0.8",
                     "--seed", "0", "--alpha", "1.0", "--out", path(model)});
  }

  fs::path dir_;
};

TEST_F(CliTest, FitWritesModelAndManifest) {
  const auto r = fit_to("model.json");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("model.json")));
  EXPECT_TRUE(fs::exists(path("model.manifest.json")));
  const auto model = read_json_file(path("model.json"));
  EXPECT_EQ(model["config"]["manifest"], "model.manifest.json");
  EXPECT_EQ(model["config"]["alpha"], 1.0);
  const auto manifest = read_json_file(path("model.manifest.json"));
  EXPECT_EQ(manifest["train_ids"].size(), 1200u);
  EXPECT_EQ(manifest["test_ids"].size(), 300u);
}

TEST_F(CliTest, CommandsAreByteIdenticalOnRerun) {
  ASSERT_EQ(fit_to("a.json").code, 0);
  ASSERT_EQ(fit_to("b.json").code, 0);
  EXPECT_EQ(slurp(path("a.manifest.json")), slurp(path("b.manifest.json")));
  auto model_a = read_json_file(path("a.json"));
  auto model_b = read_json_file(path("b.json"));
  EXPECT_EQ(model_a["config"]["manifest"], "a.manifest.json");
  model_a["config"].erase("manifest");
  model_b["config"].erase("manifest");
  EXPECT_EQ(dump_json(model_a), dump_json(model_b));

  ASSERT_EQ(bnlf_cli({"predict", "--model", path("a.json"), "--records", path("data.jsonl"), "--out", path("p1.jsonl")})
                .code,
            0);
  ASSERT_EQ(bnlf_cli({"predict", "--model", path("a.json"), "--records", path("data.jsonl"), "--out", path("p2.jsonl")})
                .code,
            0);
  EXPECT_EQ(slurp(path("p1.jsonl")), slurp(path("p2.jsonl")));

  const auto e1 = bnlf_cli({"evaluate", "--records", path("p1.jsonl"), "--out", path("r1.json")});
  const auto e2 = bnlf_cli({"evaluate", "--records", path("p1.jsonl"), "--out", path("r2.json")});
  ASSERT_EQ(e1.code, 0) << e1.err;
  EXPECT_EQ(e1.out, e2.out);
  EXPECT_EQ(slurp(path("r1.json")), slurp(path("r2.json")));
  EXPECT_TRUE(nlohmann::json::accept(slurp(path("r1.json"))));
}

TEST_F(CliTest, PredictSkipsTrainingRecords) {
  ASSERT_EQ(fit_to("m.json").code, 0);
  const auto r = bnlf_cli({"predict", "--model", path("m.json"), "--records", path("data.jsonl")});
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  const auto parsed = parse_records(in);
  EXPECT_EQ(parsed.records.size(), 300u);
  EXPECT_TRUE(parsed.issues.empty());
  EXPECT_NE(r.err.find("predicted 300"), std::string::npos);
}

TEST_F(CliTest, EvaluateWithModelMatchesPrecomputedPredictions) {
  ASSERT_EQ(fit_to("m.json").code, 0);
  ASSERT_EQ(bnlf_cli({"predict", "--model", path("m.json"), "--records", path("data.jsonl"), "--out", path("p.jsonl")})
                .code,
            0);
  const auto a = bnlf_cli({"evaluate", "--records", path("p.jsonl"), "--format", "json"});
  const auto b = bnlf_cli({"evaluate", "--model", path("m.json"), "--records", path("data.jsonl"), "--format", "json"});
  ASSERT_EQ(a.code, 0);
  ASSERT_EQ(b.code, 0);
  EXPECT_EQ(a.out, b.out);
  const auto j = nlohmann::json::parse(a.out);
  EXPECT_EQ(j["sources"].back()["name"], "bnlf");
}

TEST_F(CliTest, InferReproducesSmoothedRow) {
  std::vector<PredictionRecord> recs;
  const auto N = Sentiment::Negative;
  testing::append_configuration(recs, "financial_phrasebank", {N, N, N}, {55, 0, 0});
  testing::append_configuration(recs, "tfns", {N, N, N}, {0, 7, 12});
  const auto fitted = fit_training({}, recs, {});
  write_text_file(path("smoothed.json"), dump_json(fitted_model_to_json(fitted.network, fitted.config, "")));

  const auto r = bnlf_cli({"infer", "--model", path("smoothed.json"), "--set", "corpus=financial_phrasebank", "--set",
                           "finbert=negative", "--set", "roberta=negative", "--set", "bertweet=negative", "--format",
                           "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_NEAR(j["posterior"]["negative"].get<double>(), 0.9655, 5e-5);
  EXPECT_NEAR(j["posterior"]["neutral"].get<double>(), 0.0172, 5e-5);
  EXPECT_EQ(j["label"], "negative");

  const auto t = bnlf_cli({"infer", "--model", path("smoothed.json"), "--set", "Corpus=tfns", "--set", "finbert=bearish",
                           "--set", "roberta=negative", "--set", "bertweet=0"});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("0.5909"), std::string::npos);
  EXPECT_NE(t.out.find("0.3636"), std::string::npos);
  EXPECT_NE(t.out.find("label: positive"), std::string::npos);
}

TEST_F(CliTest, ExitCodes) {
  ASSERT_EQ(fit_to("m.json").code, 0);
  const auto unknown_corpus =
      bnlf_cli({"infer", "--model", path("m.json"), "--set", "corpus=unknown_tag", "--set", "finbert=negative"});
  EXPECT_EQ(unknown_corpus.code, 3);
  EXPECT_NE(unknown_corpus.err.find("UnknownCorpusState"), std::string::npos);

  EXPECT_EQ(bnlf_cli({"infer", "--model", path("m.json"), "--set", "nosuchnode=x"}).code, 3);
  EXPECT_EQ(bnlf_cli({"infer", "--model", path("m.json"), "--set", "finbert"}).code, 2);
  EXPECT_EQ(bnlf_cli({}).code, 2);
  EXPECT_EQ(bnlf_cli({"fit", "--records", path("data.jsonl")}).code, 2);
  EXPECT_EQ(bnlf_cli({"influence", "--model", path("m.json"), "--metric", "cosine"}).code, 2);
  EXPECT_EQ(bnlf_cli({"validate", "--records", path("missing.jsonl")}).code, 3);
  EXPECT_EQ(bnlf_cli({"fit", "--records", path("data.jsonl"), "--models", ",", "--out", path("x.json")}).code, 4);
  EXPECT_EQ(bnlf_cli({"--help"}).code, 0);

  write_text_file(path("broken.json"), "{\"nodes\": 3}\n");
  EXPECT_EQ(bnlf_cli({"influence", "--model", path("broken.json")}).code, 3);
}

TEST_F(CliTest, InfluenceFormats) {
  ASSERT_EQ(fit_to("m.json").code, 0);
  const auto table = bnlf_cli({"influence", "--model", path("m.json"), "--out", path("inf.json")});
  ASSERT_EQ(table.code, 0);
  EXPECT_NE(table.out.find("Sentiment"), std::string::npos);
  const auto j = read_json_file(path("inf.json"));
  EXPECT_EQ(j["entries"].size(), 7u);
  const auto csv = bnlf_cli({"influence", "--model", path("m.json"), "--format", "csv", "--agg", "maximum"});
  EXPECT_EQ(csv.out.rfind("Parent,Child,Strength\n", 0), 0u);
}

TEST_F(CliTest, ValidateAndReport) {
  const auto v = bnlf_cli({"validate", "--records", path("data.jsonl"), "--format", "json"});
  ASSERT_EQ(v.code, 0);
  EXPECT_EQ(nlohmann::json::parse(v.out)["records"], 1500);

  const auto r1 = bnlf_cli({"report", "--records", path("data.jsonl"), "--seed", "4", "--out", path("rep1.json")});
  const auto r2 = bnlf_cli({"report", "--records", path("data.jsonl"), "--seed", "4", "--out", path("rep2.json")});
  ASSERT_EQ(r1.code, 0) << r1.err;
  EXPECT_EQ(r1.out, r2.out);
  EXPECT_EQ(slurp(path("rep1.json")), slurp(path("rep2.json")));
  EXPECT_NE(r1.out.find("[influence]"), std::string::npos);
  const auto j = read_json_file(path("rep1.json"));
  EXPECT_EQ(j["split"]["test"], 300);
}

}  // namespace
}  // namespace bnlf

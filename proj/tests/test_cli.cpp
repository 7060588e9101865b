#include <algorithm>
#include <vector>

#include <gtest/gtest.h>

#include "cli_harness.hpp"

using namespace cmax::testing;

namespace {

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto r = run_cli("synth --scene bar --vx 3 --vy -2 --batches 3 --seed 4 --output-dir \"" +
                               dir.path().string() + "\"",
                           dir / "synth.log");
    ASSERT_EQ(r.exit_code, 0) << r.output;
    events = (dir / "events.txt").string();
  }

  CliResult run(const std::string& args) { return run_cli(args, dir / "cli.log"); }
  std::string out_flag(const std::string& sub) {
    return " --output-dir \"" + (dir / sub).string() + "\"";
  }

  ScratchDir dir{"cli"};
  std::string events;
};

}  // namespace

TEST_F(Cli, TrackWritesOneRowPerBatch) {
  const auto r = run("track --input \"" + events + "\" --iterations 20" + out_flag("t"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto rows = lines(slurp(dir / "t" / "trajectory.csv"));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], "batch,x_roi,y_roi,vx,vy,contrast,events_in_roi");
  EXPECT_NE(r.output.find("batches: 3"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir / "t" / "run.cfg"));
}

TEST_F(Cli, TrackDumpsImages) {
  const auto r = run("track --input \"" + events + "\" --iterations 3 --dump-iwe" + out_flag("d"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  for (const char* f : {"iwe_0000.pgm", "iwe_0001.pgm", "iwe_0002.pgm"}) {
    const std::string pgm = slurp(dir / "d" / f);
    EXPECT_EQ(pgm.rfind("P5\n", 0), 0u) << f;
  }
}

TEST_F(Cli, ConfigFileAndFlagPrecedence) {
  {
    std::ofstream cfg(dir / "run.cfg");
    cfg << "input_path = " << events << "\niterations = 4\nbatch_size = 7500\n";
  }
  const auto r = run("track --config \"" + (dir / "run.cfg").string() + "\" --batch-size 5000" +
                     out_flag("c"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const std::string written = slurp(dir / "c" / "run.cfg");
  EXPECT_NE(written.find("iterations = 4\n"), std::string::npos);
  EXPECT_NE(written.find("batch_size = 5000\n"), std::string::npos);
  EXPECT_EQ(lines(slurp(dir / "c" / "trajectory.csv")).size(), 4u);
}

TEST_F(Cli, MissingInputNamesPath) {
  const auto r = run("track --input /no/such/events.txt" + out_flag("m"));
  EXPECT_NE(r.exit_code, 0);
  EXPECT_NE(r.output.find("/no/such/events.txt"), std::string::npos);
}

TEST_F(Cli, BadArguments) {
  EXPECT_NE(run("track").exit_code, 0);
  EXPECT_NE(run("bogus").exit_code, 0);
  EXPECT_NE(run("track --input \"" + events + "\" --mode turbo" + out_flag("b")).exit_code, 0);
  EXPECT_NE(run("estimate --input \"" + events + "\" --batch-index 9" + out_flag("b")).exit_code, 0);
}

TEST_F(Cli, EstimateTrace) {
  // At the default step the iterate dithers around the (kinked) maximum once
  // converged; with a fifth of it this fixture ascends monotonically.
  auto r = run("estimate --input \"" + events + "\" --batch-index 0 --iterations 50"
               " --learning-rate 0.01" + out_flag("e"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto rows = lines(slurp(dir / "e" / "trace.csv"));
  ASSERT_EQ(rows.size(), 51u);
  EXPECT_EQ(rows[0], "iteration,vx,vy,contrast,grad_vx,grad_vy");
  double prev = -1.0;
  for (std::size_t k = 1; k < rows.size(); ++k) {
    std::istringstream row(rows[k]);
    std::string field;
    for (int c = 0; c < 4; ++c) std::getline(row, field, ',');
    const double contrast = std::stod(field);
    EXPECT_GE(contrast, prev) << "iteration " << k - 1;
    prev = contrast;
  }

  r = run("estimate --input \"" + events + "\" --iterations 1 --mode banked" + out_flag("e1"));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_EQ(lines(slurp(dir / "e1" / "trace.csv")).size(), 2u);
}

TEST_F(Cli, CyclesReference) {
  auto r = run("cycles --n-events 5000 --iters 100 --roi-events 800 --roi 64x64 --clock 210e6");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("194100"), std::string::npos);
  EXPECT_NE(r.output.find("0.9243 ms"), std::string::npos);
  EXPECT_NE(r.output.find("CPU"), std::string::npos);
  EXPECT_NE(r.output.find("GPU"), std::string::npos);

  r = run("cycles --iters 90 --roi-events 5000 --roi 240x180 --clock 200e6 --no-reference "
          "--format csv");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find(",1433030"), std::string::npos);
  EXPECT_EQ(r.output.find("CPU"), std::string::npos);

  r = run("cycles --measured host=9.243");
  ASSERT_EQ(r.exit_code, 0) << r.output;
  EXPECT_NE(r.output.find("10.0x"), std::string::npos);

  EXPECT_NE(run("cycles --roi 63x63").exit_code, 0);
  EXPECT_NE(run("cycles --clock 0").exit_code, 0);
}

TEST_F(Cli, SynthIsDeterministic) {
  const auto a = run("synth --scene square --noise 0.1 --seed 9 --batches 2" + out_flag("s1"));
  const auto b = run("synth --scene square --noise 0.1 --seed 9 --batches 2" + out_flag("s2"));
  ASSERT_EQ(a.exit_code, 0) << a.output;
  ASSERT_EQ(b.exit_code, 0) << b.output;
  EXPECT_EQ(slurp(dir / "s1" / "events.txt"), slurp(dir / "s2" / "events.txt"));
  EXPECT_EQ(slurp(dir / "s1" / "truth.txt"), slurp(dir / "s2" / "truth.txt"));
  EXPECT_NE(run("synth --scene circle" + out_flag("s3")).exit_code, 0);
}

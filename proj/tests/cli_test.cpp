// Exercises the CLI's external contract: subcommand behavior and the
// documented exit codes (0 success, 1 usage, 2 data, 3 internal).

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

namespace {

const std::string kCli = QLIME_CLI_PATH;

std::filesystem::path work_dir() {
    const auto dir = std::filesystem::temp_directory_path() / "qlime_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

int run(const std::string& args) {
    const int status = std::system((kCli + " " + args + " > /dev/null 2>&1").c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Cli, UsageErrorsExitOne) {
    EXPECT_EQ(run("frobnicate"), 1);
    EXPECT_EQ(run(""), 1);
    EXPECT_EQ(run("train --out m.json"), 1);          // missing --data
    EXPECT_EQ(run("explain --model m.json"), 1);      // missing --text
    EXPECT_EQ(run("train --data x.csv --out m.json --max-features 999"), 1);
    EXPECT_EQ(run("--help"), 0);
}

TEST(Cli, DataErrorsExitTwo) {
    const auto dir = work_dir();
    EXPECT_EQ(run("train --data /nonexistent/data.csv --out " + (dir / "m.json").string()), 2);

    const auto bad_csv = dir / "bad.csv";
    {
        std::ofstream out(bad_csv);
        out << "text,label\nfine,1\nbroken,7\n";
    }
    EXPECT_EQ(run("train --data " + bad_csv.string() + " --out " + (dir / "m.json").string()),
              2);
    EXPECT_EQ(run("explain --model /nonexistent/model.json --text hello"), 2);
    EXPECT_EQ(run("bench --data /nonexistent/data.csv --csv " + (dir / "o.csv").string()), 2);
}

TEST(Cli, FullPipelineExitsZero) {
    const auto dir = work_dir();
    const std::string data = (dir / "synth.csv").string();
    const std::string model = (dir / "model.json").string();

    ASSERT_EQ(run("synth --docs 80 --vocab 6 --seed 3 --out " + data), 0);
    ASSERT_EQ(run("train --data " + data + " --max-features 6 --stopwords off --seed 4 --out " +
                  model),
              0);
    EXPECT_EQ(run("explain --model " + model + " --text \"tok00 tok02\" --method both"
                  " --top-k 3 --seed 5"),
              0);
    EXPECT_EQ(run("explain --model " + model + " --text \"tok01\" --method qlime --shots 100"),
              0);
    EXPECT_EQ(run("bench --data synth --grid max_features=4,6 --stopwords on --shots none"
                  " --instances 2 --seed 6 --csv " +
                  (dir / "results.csv").string() + " --report " + (dir / "report.md").string()),
              0);
}

TEST(Cli, ExplainWithNoPresentFeaturesExitsTwo) {
    const auto dir = work_dir();
    const std::string data = (dir / "synth2.csv").string();
    const std::string model = (dir / "model2.json").string();
    ASSERT_EQ(run("synth --docs 60 --vocab 4 --seed 9 --out " + data), 0);
    ASSERT_EQ(run("train --data " + data + " --max-features 4 --seed 9 --out " + model), 0);
    // No vocabulary token appears in the text, so the baseline has nothing
    // to perturb.
    EXPECT_EQ(run("explain --model " + model + " --text \"unrelated words\" --method lime"), 2);
}

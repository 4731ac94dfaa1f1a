#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "interpcast/agents/prompts.hpp"
#include "interpcast/errors.hpp"
#include "interpcast/gateway/gateway.hpp"
#include "interpcast/gateway/provider.hpp"
#include "interpcast/pipeline/refine.hpp"
#include "interpcast/pipeline/runner.hpp"
#include "interpcast/pipeline/store.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

using namespace interpcast;
using namespace interpcast::domain;
using namespace interpcast::gateway;
using namespace interpcast::pipeline;
namespace fs = std::filesystem;

namespace {

struct Kill {};

Chapter chapter() {
    return {"book", "ch1", "测试章节", "这一章讲了沟通。先讲情境，再讲方法。", Language::zh};
}

PipelineConfig config(int i_max = 3) {
    PipelineConfig cfg;
    cfg.i_max = i_max;
    cfg.prompt_dir = TEST_PROMPTS_DIR;
    return cfg;
}

ScriptEntry e(const char* role, const ijson& j) { return {std::string(role), j.dump()}; }

ijson set_of(int n) {
    ijson topics = ijson::array();
    ijson cases = ijson::array();
    for (int k = 1; k <= n; ++k) {
        topics.push_back({{"index", k}, {"statement", "主题" + std::to_string(k)}});
        cases.push_back({{"topic_index", k}, {"text", "案例" + std::to_string(k)}});
    }
    return {{"topics", topics}, {"cases", cases}};
}

ijson verdicts(std::vector<bool> valid) {
    ijson arr = ijson::array();
    for (std::size_t i = 0; i < valid.size(); ++i) {
        arr.push_back({{"topic_index", static_cast<int>(i) + 1},
                       {"valid", valid[i] ? "Yes" : "No"},
                       {"reasons", valid[i] ? "" : "不合适"}});
    }
    return {{"verdicts", arr}};
}

ijson enriched(int n) {
    ijson arr = ijson::array();
    for (int k = 1; k <= n; ++k) {
        arr.push_back({{"topic_index", k},
                       {"text", "丰富案例" + std::to_string(k)},
                       {"added_background", "背景" + std::to_string(k)}});
    }
    return {{"cases", arr}};
}

ijson expansion(int k) { return {{"topic_index", k}, {"text", "扩写" + std::to_string(k)}}; }
ijson argument(int k) { return {{"topic_index", k}, {"text", "论证" + std::to_string(k)}}; }
ijson draft(int k) { return {{"topic_index", k}, {"text", "草稿" + std::to_string(k)}}; }
ijson oral(int k) { return {{"topic_index", k}, {"text", "口语稿" + std::to_string(k) + "。"}}; }
ijson merged() { return {{"text", "口语稿1。过渡。口语稿2。"}}; }

const ijson pass2 = {{"compt", "Yes"}, {"log", "Yes"}, {"suggestions", ""}};
const ijson fail2 = {{"compt", "No"}, {"log", "Yes"}, {"suggestions", "补上逻辑"}};
const ijson pass3 = {{"natural", "Yes"}, {"fluent", "Yes"}, {"suggestions", ""}};
const ijson fail3 = {{"natural", "No"}, {"fluent", "Yes"}, {"suggestions", "更口语"}};
const ijson pass4 = {{"coherent", "Yes"}, {"fluent", "Yes"}, {"natural", "Yes"},
                     {"suggestions", ""}};
const ijson fail4 = {{"coherent", "No"}, {"fluent", "Yes"}, {"natural", "Yes"},
                     {"suggestions", "开头突兀"}};

// TA through PR4 for a 2-topic chapter where every reviewer passes.
std::vector<ScriptEntry> happy_two_topic() {
    std::vector<ScriptEntry> s;
    s.push_back(e("TA", set_of(2)));
    s.push_back(e("PR1", verdicts({true, true})));
    s.push_back(e("CA1", enriched(2)));
    for (int k = 1; k <= 2; ++k) {
        s.push_back(e("CA2", expansion(k)));
        s.push_back(e("CA3", argument(k)));
        s.push_back(e("ED1", draft(k)));
        s.push_back(e("PR2", pass2));
    }
    for (int k = 1; k <= 2; ++k) {
        s.push_back(e("NR", oral(k)));
        s.push_back(e("PR3", pass3));
    }
    s.push_back(e("ED2", merged()));
    s.push_back(e("PR4", pass4));
    return s;
}

struct Rig {
    ScriptedProvider provider;
    PipelineTrace trace;
    agents::PromptLibrary prompts;
    PipelineConfig cfg;
    Gateway gw;

    Rig(std::vector<ScriptEntry> entries, PipelineConfig c = config())
        : provider(std::move(entries)),
          prompts(agents::PromptLibrary::load(TEST_PROMPTS_DIR, Language::zh)), cfg(std::move(c)),
          gw(provider, trace, cfg) {
        gw.set_sleeper([](std::chrono::milliseconds) {});
    }

    ChapterRunner runner(const fs::path& dir, RunHooks hooks = {}) {
        return ChapterRunner(chapter(), cfg, gw, prompts, trace, dir, std::move(hooks));
    }
};

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / "interpcast_pipeline" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

TEST_CASE("refine_loop settles on the first pass without touching the artifact") {
    TopicDraft draft{1, "原文", 0, ArtifactStatus::in_review};
    int reviews = 0, revisions = 0;
    auto out = refine_loop(
        draft,
        [&](const TopicDraft&) {
            ++reviews;
            return DraftFeedback{Flag::yes, Flag::yes, ""};
        },
        [&](const TopicDraft& d, const DraftFeedback&) {
            ++revisions;
            return d;
        },
        3);
    CHECK(out.rounds_used == 0);
    CHECK(out.passed);
    CHECK(out.artifact.text == "原文");
    CHECK(out.artifact.status == ArtifactStatus::accepted);
    CHECK(reviews == 1);
    CHECK(revisions == 0);
}

TEST_CASE("refine_loop revises until the reviewer passes") {
    TopicDraft draft{1, "第0稿", 0, ArtifactStatus::in_review};
    int reviews = 0, revisions = 0;
    auto out = refine_loop(
        draft,
        [&](const TopicDraft&) {
            ++reviews;
            bool pass = reviews >= 3; // fail, fail, pass
            return DraftFeedback{pass ? Flag::yes : Flag::no, Flag::yes, pass ? "" : "再改"};
        },
        [&](const TopicDraft& d, const DraftFeedback& f) {
            CHECK(f.suggestions == "再改");
            ++revisions;
            TopicDraft next = d;
            next.text = "第" + std::to_string(revisions) + "稿";
            next.round = d.round + 1;
            return next;
        },
        3);
    CHECK(out.rounds_used == 2);
    CHECK(out.passed);
    CHECK(out.artifact.text == "第2稿");
    CHECK(out.artifact.round == 2);
    CHECK(out.artifact.status == ArtifactStatus::accepted);
    CHECK(reviews == 3);
    CHECK(revisions == 2);
}

TEST_CASE("refine_loop exhaustion keeps the artifact with warnings") {
    for (int i_max : {0, 1, 3}) {
        CAPTURE(i_max);
        TopicDraft draft{1, "稿", 0, ArtifactStatus::in_review};
        int reviews = 0, revisions = 0;
        auto out = refine_loop(
            draft,
            [&](const TopicDraft&) {
                ++reviews;
                return DraftFeedback{Flag::no, Flag::no, "不行"};
            },
            [&](const TopicDraft& d, const DraftFeedback&) {
                ++revisions;
                TopicDraft next = d;
                next.round = d.round + 1;
                return next;
            },
            i_max);
        CHECK(out.rounds_used == i_max);
        CHECK(!out.passed);
        CHECK(out.artifact.status == ArtifactStatus::accepted_with_warnings);
        CHECK(reviews == i_max + 1);
        CHECK(revisions == i_max);
    }
}

TEST_CASE("refine_loop rejects a negative budget") {
    TopicDraft draft{1, "稿", 0, ArtifactStatus::in_review};
    auto review = [](const TopicDraft&) { return DraftFeedback{Flag::yes, Flag::yes, ""}; };
    auto revise = [](const TopicDraft& d, const DraftFeedback&) { return d; };
    CHECK_THROWS_AS(refine_loop(draft, review, revise, -1), PreconditionError);
}

TEST_CASE("run_tci accepts a clean first proposal with one TA call") {
    Rig rig({e("TA", set_of(2)), e("PR1", verdicts({true, true})), e("CA1", enriched(2))});
    auto runner = rig.runner(fresh_dir("tci_clean"));
    auto tci = runner.run_tci();
    REQUIRE(tci.topics.size() == 2);
    CHECK(tci.topics[0].index == 1);
    CHECK(tci.topics[1].index == 2);
    CHECK(tci.cases[0].text == "丰富案例1");
    CHECK(rig.provider.consumed() == 3);
}

TEST_CASE("run_tci re-invokes TA after a rejection") {
    Rig rig({e("TA", set_of(2)), e("PR1", verdicts({false, true})), e("TA", set_of(2)),
             e("PR1", verdicts({true, true})), e("CA1", enriched(2))});
    auto runner = rig.runner(fresh_dir("tci_reinvoke"));
    auto tci = runner.run_tci();
    CHECK(tci.topics.size() == 2);
    CHECK(rig.provider.consumed() == 5);
    // the second TA prompt carries the rejection reasons
    std::string reask = rig.provider.wire_bodies()[2]["messages"][1]["content"];
    CHECK(reask.find("不合适") != std::string::npos);
}

TEST_CASE("run_tci drops unsalvaged pairs and renumbers the survivors") {
    Rig rig({e("TA", set_of(3)), e("PR1", verdicts({true, false, true})), e("TA", set_of(3)),
             e("PR1", verdicts({true, false, true})), e("CA1", enriched(2))},
            config(1));
    auto runner = rig.runner(fresh_dir("tci_renumber"));
    auto tci = runner.run_tci();
    REQUIRE(tci.topics.size() == 2);
    CHECK(tci.topics[0].index == 1);
    CHECK(tci.topics[0].statement == "主题1");
    CHECK(tci.topics[1].index == 2);
    CHECK(tci.topics[1].statement == "主题3"); // old 3 renumbered to 2
    CHECK(tci.cases[1].topic_index == 2);
    // CA1 saw the renumbered set, not the original indices
    std::string ca1_prompt = rig.provider.wire_bodies()[4]["messages"][1]["content"];
    CHECK(ca1_prompt.find("主题3") != std::string::npos);
}

TEST_CASE("run_tci exhausts TA re-invocations and gives up") {
    std::vector<ScriptEntry> s;
    for (int i = 0; i < 4; ++i) {
        s.push_back(e("TA", set_of(2)));
        s.push_back(e("PR1", verdicts({false, false})));
    }
    Rig rig(std::move(s));
    auto runner = rig.runner(fresh_dir("tci_giveup"));
    try {
        runner.run_tci();
        FAIL("expected NoValidTopics");
    } catch (const NoValidTopics& ex) {
        CHECK(std::string(ex.what()).find("ch1") != std::string::npos);
    }
    CHECK(rig.provider.consumed() == 8); // 4 TA + 4 PR1, i_max 3
}

TEST_CASE("run_pi produces an accepted draft") {
    Topic topic{1, "主题1"};
    EnrichedCase enr{1, "丰富案例1", "背景1"};

    SUBCASE("clean pass costs four calls") {
        Rig rig({e("CA2", expansion(1)), e("CA3", argument(1)), e("ED1", draft(1)),
                 e("PR2", pass2)});
        auto runner = rig.runner(fresh_dir("pi_pass"));
        auto d = runner.run_pi(topic, enr);
        CHECK(d.topic_index == 1);
        CHECK(d.round == 0);
        CHECK(d.status == ArtifactStatus::accepted);
        CHECK(rig.provider.consumed() == 4);
    }
    SUBCASE("one revision costs six calls") {
        Rig rig({e("CA2", expansion(1)), e("CA3", argument(1)), e("ED1", draft(1)),
                 e("PR2", fail2), e("ED1", draft(1)), e("PR2", pass2)});
        auto runner = rig.runner(fresh_dir("pi_revise"));
        auto d = runner.run_pi(topic, enr);
        CHECK(d.round == 1);
        CHECK(d.status == ArtifactStatus::accepted);
        CHECK(rig.provider.consumed() == 6);
    }
    SUBCASE("exhaustion is visible in the status") {
        std::vector<ScriptEntry> s = {e("CA2", expansion(1)), e("CA3", argument(1)),
                                      e("ED1", draft(1))};
        for (int i = 0; i < 3; ++i) {
            s.push_back(e("PR2", fail2));
            s.push_back(e("ED1", draft(1)));
        }
        s.push_back(e("PR2", fail2));
        Rig rig(std::move(s));
        auto runner = rig.runner(fresh_dir("pi_exhaust"));
        auto d = runner.run_pi(topic, enr);
        CHECK(d.round == 3);
        CHECK(d.status == ArtifactStatus::accepted_with_warnings);
        CHECK(rig.provider.consumed() == 10);
    }
}

TEST_CASE("run_or rewrites the draft orally") {
    TopicDraft d{1, "草稿1", 0, ArtifactStatus::accepted};

    SUBCASE("clean pass costs two calls") {
        Rig rig({e("NR", oral(1)), e("PR3", pass3)});
        auto runner = rig.runner(fresh_dir("or_pass"));
        auto script = runner.run_or(d);
        CHECK(script.topic_index == 1);
        CHECK(script.round == 0);
        CHECK(script.status == ArtifactStatus::accepted);
        CHECK(rig.provider.consumed() == 2);
    }
    SUBCASE("one revision costs four calls") {
        Rig rig({e("NR", oral(1)), e("PR3", fail3), e("NR", oral(1)), e("PR3", pass3)});
        auto runner = rig.runner(fresh_dir("or_revise"));
        auto script = runner.run_or(d);
        CHECK(script.round == 1);
        CHECK(script.status == ArtifactStatus::accepted);
        CHECK(rig.provider.consumed() == 4);
    }
}

TEST_CASE("run_rr integrates the oral scripts in order") {
    auto accepted_oral = [](int k) {
        return OralScript{k, "口语稿" + std::to_string(k) + "。", 0, ArtifactStatus::accepted};
    };

    SUBCASE("a single script is the manuscript, byte for byte") {
        Rig rig({e("PR4", pass4)});
        auto runner = rig.runner(fresh_dir("rr_single"));
        auto m = runner.run_rr({accepted_oral(1)});
        CHECK(m.text == "口语稿1。");
        CHECK(m.included == std::vector<int>{1});
        CHECK(m.status == ArtifactStatus::accepted);
        CHECK(rig.provider.consumed() == 1); // no integration call
    }
    SUBCASE("two scripts need one integration") {
        Rig rig({e("ED2", merged()), e("PR4", pass4)});
        auto runner = rig.runner(fresh_dir("rr_two"));
        auto m = runner.run_rr({accepted_oral(1), accepted_oral(2)});
        CHECK(m.included == std::vector<int>{1, 2});
        CHECK(rig.provider.consumed() == 2);
    }
    SUBCASE("three scripts need two integrations") {
        Rig rig({e("ED2", merged()), e("ED2", merged()), e("PR4", pass4)});
        auto runner = rig.runner(fresh_dir("rr_three"));
        auto m = runner.run_rr({accepted_oral(1), accepted_oral(2), accepted_oral(3)});
        CHECK(m.included == std::vector<int>{1, 2, 3});
        CHECK(rig.provider.consumed() == 3);
    }
    SUBCASE("review failure triggers ED2 revision") {
        Rig rig({e("ED2", merged()), e("PR4", fail4), e("ED2", merged()), e("PR4", pass4)});
        auto runner = rig.runner(fresh_dir("rr_revise"));
        auto m = runner.run_rr({accepted_oral(1), accepted_oral(2)});
        CHECK(m.round == 1);
        CHECK(m.included == std::vector<int>{1, 2});
        CHECK(rig.provider.consumed() == 4);
    }
    SUBCASE("no scripts is a caller error") {
        Rig rig({e("PR4", pass4)});
        auto runner = rig.runner(fresh_dir("rr_empty"));
        CHECK_THROWS_AS(runner.run_rr({}), PreconditionError);
        CHECK(rig.provider.consumed() == 0);
    }
}

TEST_CASE("a two-topic chapter with clean reviews costs seventeen calls") {
    Rig rig(happy_two_topic());
    auto dir = fresh_dir("full_17");
    auto m = rig.runner(dir).run();

    CHECK(rig.provider.consumed() == 17);
    CHECK(rig.provider.remaining() == 0);
    CHECK(rig.trace.size() == 17);
    CHECK(m.text == "口语稿1。过渡。口语稿2。");
    CHECK(m.included == std::vector<int>{1, 2});

    auto meta = ijson::parse(slurp(dir / "metadata.json"));
    CHECK(meta["agent_calls"] == 17);
    CHECK(meta["stage_calls"]["TCI"] == 3);
    CHECK(meta["stage_calls"]["PI"] == 8);
    CHECK(meta["stage_calls"]["OR"] == 4);
    CHECK(meta["stage_calls"]["RR"] == 2);
    CHECK(meta["rounds"]["pi/1"] == 0);
    CHECK(meta["rounds"]["rr"] == 0);
    CHECK(meta["warnings"].empty());
    CHECK(meta["topics"] == ijson({"主题1", "主题2"}));

    CHECK(slurp(dir / "manuscript.txt") == "口语稿1。过渡。口语稿2。");
    for (const char* rel : {"config.json", "chapter.json", "tci/result.json", "pi/topic_1.json",
                            "pi/topic_2.json", "or/topic_1.json", "or/topic_2.json",
                            "rr/manuscript.json"}) {
        CHECK(fs::exists(dir / rel));
        CHECK(fs::exists(dir / (std::string(rel) + ".sha256")));
    }
}

TEST_CASE("canonical trace is densely renumbered and deterministically ordered") {
    Rig rig(happy_two_topic());
    auto dir = fresh_dir("full_canonical");
    rig.runner(dir).run();

    auto canon = rig.trace.canonical();
    REQUIRE(canon.size() == 17);
    for (std::size_t i = 0; i < canon.size(); ++i) {
        CHECK(canon[i].seq == static_cast<int>(i) + 1);
    }
    // TCI sorts alphabetically inside one round
    CHECK(canon[0].role == "CA1");
    CHECK(canon[1].role == "PR1");
    CHECK(canon[2].role == "TA");
    // PI topic 1 before topic 2
    CHECK(canon[3].role == "CA2");
    CHECK(canon[3].topic_index == 1);
    CHECK(canon[7].topic_index == 2);
    // RR keeps the integration before the keyless review
    CHECK(canon[15].role == "ED2");
    CHECK(canon[16].role == "PR4");
    CHECK(!canon[16].topic_index.has_value());
}

TEST_CASE("reruns are byte-identical") {
    std::string first_manuscript;
    std::string first_trace;
    for (int i = 0; i < 10; ++i) {
        Rig rig(happy_two_topic());
        auto dir = fresh_dir("det_" + std::to_string(i));
        auto m = rig.runner(dir).run();
        if (i == 0) {
            first_manuscript = m.text;
            first_trace = rig.trace.canonical_jsonl();
        } else {
            CHECK(m.text == first_manuscript);
            CHECK(rig.trace.canonical_jsonl() == first_trace);
        }
    }
}

TEST_CASE("the revision budget is invisible when reviewers pass") {
    Rig a(happy_two_topic(), config(0));
    Rig b(happy_two_topic(), config(3));
    auto ma = a.runner(fresh_dir("imax0")).run();
    auto mb = b.runner(fresh_dir("imax3")).run();
    CHECK(ma.text == mb.text);
    CHECK(a.trace.canonical_jsonl() == b.trace.canonical_jsonl());
}

TEST_CASE("budget exhaustion surfaces in metadata warnings") {
    std::vector<ScriptEntry> s;
    s.push_back(e("TA", set_of(2)));
    s.push_back(e("PR1", verdicts({true, true})));
    s.push_back(e("CA1", enriched(2)));
    // topic 1 never satisfies PR2 inside i_max 1
    s.push_back(e("CA2", expansion(1)));
    s.push_back(e("CA3", argument(1)));
    s.push_back(e("ED1", draft(1)));
    s.push_back(e("PR2", fail2));
    s.push_back(e("ED1", draft(1)));
    s.push_back(e("PR2", fail2));
    s.push_back(e("CA2", expansion(2)));
    s.push_back(e("CA3", argument(2)));
    s.push_back(e("ED1", draft(2)));
    s.push_back(e("PR2", pass2));
    for (int k = 1; k <= 2; ++k) {
        s.push_back(e("NR", oral(k)));
        s.push_back(e("PR3", pass3));
    }
    s.push_back(e("ED2", merged()));
    s.push_back(e("PR4", pass4));

    Rig rig(std::move(s), config(1));
    auto dir = fresh_dir("warned");
    auto m = rig.runner(dir).run();
    CHECK(m.status == ArtifactStatus::accepted);

    auto meta = ijson::parse(slurp(dir / "metadata.json"));
    CHECK(meta["rounds"]["pi/1"] == 1);
    CHECK(meta["rounds"]["pi/2"] == 0);
    CHECK(meta["warnings"] == ijson({"pi/1: accepted_with_warnings"}));
    CHECK(meta["agent_calls"] == 19);
}

TEST_CASE("a run interrupted at any stage boundary resumes to the same bytes") {
    auto baseline_dir = fresh_dir("resume_baseline");
    {
        Rig rig(happy_two_topic());
        rig.runner(baseline_dir).run();
    }
    const std::string want_manuscript = slurp(baseline_dir / "manuscript.txt");
    const std::string want_trace = slurp(baseline_dir / "trace.jsonl");
    const std::string want_meta = slurp(baseline_dir / "metadata.json");

    const std::vector<std::pair<std::string, std::size_t>> cuts = {
        {"tci", 3}, {"pi/1", 7}, {"pi/2", 11}, {"or/1", 13}, {"or/2", 15}, {"rr", 17}};

    for (const auto& [unit, calls_before] : cuts) {
        CAPTURE(unit);
        auto dir = fresh_dir("resume_cut_" + std::to_string(calls_before));

        Rig first(happy_two_topic());
        RunHooks hooks;
        hooks.after_checkpoint = [&](const std::string& done) {
            if (done == unit) throw Kill{};
        };
        bool killed = false;
        try {
            first.runner(dir, hooks).run();
        } catch (const Kill&) {
            killed = true;
        }
        CHECK(killed);
        CHECK(first.provider.consumed() == calls_before);

        ScriptedProvider second(happy_two_topic());
        PipelineTrace trace;
        auto m = resume_chapter(dir, second, trace);

        CHECK(m.text == want_manuscript);
        CHECK(second.wire_bodies().size() == 17 - calls_before); // replay issues no calls
        CHECK(slurp(dir / "manuscript.txt") == want_manuscript);
        CHECK(slurp(dir / "trace.jsonl") == want_trace);
        CHECK(slurp(dir / "metadata.json") == want_meta);
    }
}

TEST_CASE("resuming a finished run issues no provider calls") {
    auto dir = fresh_dir("resume_done");
    {
        Rig rig(happy_two_topic());
        rig.runner(dir).run();
    }
    ScriptedProvider empty(std::vector<ScriptEntry>{});
    PipelineTrace trace;
    auto m = resume_chapter(dir, empty, trace);
    CHECK(m.text == "口语稿1。过渡。口语稿2。");
    CHECK(empty.consumed() == 0);
    CHECK(trace.size() == 17); // rebuilt from checkpoints
}

TEST_CASE("a missing sidecar degrades to recomputation, not corruption") {
    auto dir = fresh_dir("resume_nosidecar");
    {
        Rig rig(happy_two_topic());
        rig.runner(dir).run();
    }
    fs::remove(dir / "tci/result.json.sha256");

    ScriptedProvider full(happy_two_topic());
    PipelineTrace trace;
    auto m = resume_chapter(dir, full, trace);
    CHECK(m.text == "口语稿1。过渡。口语稿2。");
    CHECK(full.consumed() == 17); // everything after the gap is recomputed
}

TEST_CASE("a tampered checkpoint byte is corruption") {
    auto dir = fresh_dir("resume_tamper");
    {
        Rig rig(happy_two_topic());
        rig.runner(dir).run();
    }
    auto path = dir / "pi/topic_1.json";
    std::string payload = slurp(path);
    payload[payload.size() / 2] = payload[payload.size() / 2] == 'x' ? 'y' : 'x';
    std::ofstream(path, std::ios::binary | std::ios::trunc) << payload;

    ScriptedProvider full(happy_two_topic());
    PipelineTrace trace;
    CHECK_THROWS_AS(resume_chapter(dir, full, trace), CorruptCheckpoint);
}

TEST_CASE("a changed config or chapter refuses to resume") {
    auto dir = fresh_dir("resume_mismatch");
    {
        Rig rig(happy_two_topic());
        rig.runner(dir).run();
    }
    SUBCASE("different temperature") {
        auto cfg = config();
        cfg.temperature = 0.2;
        Rig rig(happy_two_topic(), cfg);
        CHECK_THROWS_AS(rig.runner(dir).run(), ConfigMismatch);
    }
    SUBCASE("different chapter body") {
        Rig rig(happy_two_topic());
        auto ch = chapter();
        ch.body += "多了一句。";
        ChapterRunner runner(ch, rig.cfg, rig.gw, rig.prompts, rig.trace, dir);
        CHECK_THROWS_AS(runner.run(), ConfigMismatch);
    }
}

TEST_CASE("resume needs the frozen snapshots") {
    auto dir = fresh_dir("resume_blank");
    ScriptedProvider p(std::vector<ScriptEntry>{});
    PipelineTrace trace;
    CHECK_THROWS_AS(resume_chapter(dir, p, trace), PreconditionError);
}

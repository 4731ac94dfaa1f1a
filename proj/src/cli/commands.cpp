#include "interpcast/cli/commands.hpp"

#include "interpcast/audio/audio.hpp"
#include "interpcast/audio/tts.hpp"
#include "interpcast/audio/wav.hpp"
#include "interpcast/cfg/cfg.hpp"
#include "interpcast/domain/serde.hpp"
#include "interpcast/domain/validate.hpp"
#include "interpcast/errors.hpp"
#include "interpcast/gateway/gateway.hpp"
#include "interpcast/ingest/ingest.hpp"
#include "interpcast/pipeline/runner.hpp"
#include "interpcast/pipeline/store.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

namespace interpcast::cli {

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v && *v ? std::string(v) : fallback;
}

std::unique_ptr<gateway::Provider> make_provider(const std::string& spec,
                                                 const std::string& chapter_id) {
    if (spec.rfind("script:", 0) == 0) {
        const std::string path = spec.substr(7);
        if (path.empty()) throw ConfigError("--provider script: needs a path");
        auto resolved = gateway::ScriptedProvider::resolve(path, chapter_id);
        return std::make_unique<gateway::ScriptedProvider>(resolved);
    }
    if (spec == "live") {
        const std::string key = env_or("INTERPCAST_API_KEY", "");
        if (key.empty()) {
            throw ConfigError("the live provider needs INTERPCAST_API_KEY");
        }
        return std::make_unique<gateway::HttpProvider>(
            env_or("INTERPCAST_API_BASE", "https://api.deepseek.com"), key);
    }
    throw ConfigError("unknown provider: " + spec + " (use live or script:<path>)");
}

std::unique_ptr<audio::TtsBackend> make_tts(const domain::PipelineConfig& cfg) {
    if (cfg.audio.tts_backend == "tone") {
        return std::make_unique<audio::ToneTts>(cfg.sample_rate_hz, cfg.audio.tone_ms_per_char);
    }
    if (cfg.audio.tts_backend == "http") {
        const std::string base = env_or("INTERPCAST_TTS_BASE", "");
        if (base.empty()) throw ConfigError("the http TTS backend needs INTERPCAST_TTS_BASE");
        return std::make_unique<audio::HttpTts>(base, cfg.sample_rate_hz);
    }
    throw ConfigError("unknown tts_backend: " + cfg.audio.tts_backend + " (use tone or http)");
}

// cmd_synth replays a finished run; any provider call means the run was
// not actually finished.
class NullProvider : public gateway::Provider {
public:
    std::string id() const override { return "null"; }
    gateway::WireResult send(const ijson&, const std::string& role_tag) override {
        throw TransportError("unexpected provider call for " + role_tag +
                                 " while replaying a finished run",
                             false);
    }
};

domain::PipelineConfig build_config(const RunOptions& options) {
    domain::PipelineConfig cfg;
    if (!options.config_file.empty()) cfg = cfg::load_config_file(options.config_file);
    if (options.i_max) cfg.i_max = *options.i_max;
    if (options.temperature) cfg.temperature = *options.temperature;
    if (options.lang) cfg.prompt_language = domain::language_from_string(*options.lang);
    cfg.prompt_dir = std::filesystem::absolute(cfg.prompt_dir).string();

    auto report = domain::validate(cfg);
    if (!report.ok()) throw ConfigError(report.joined());
    return cfg;
}

int run_one_chapter(const domain::Chapter& chapter, const domain::PipelineConfig& cfg,
                    const agents::PromptLibrary& prompts, const RunOptions& options,
                    std::mutex& err_mutex, std::ostream& err) {
    const std::filesystem::path dir =
        std::filesystem::path(options.run_dir) / chapter.book_id / chapter.chapter_id;
    try {
        auto provider = make_provider(options.provider, chapter.chapter_id);
        PipelineTrace trace;
        gateway::Gateway gw(*provider, trace, cfg);
        pipeline::ChapterRunner runner(chapter, cfg, gw, prompts, trace, dir);
        auto manuscript = runner.run();

        if (options.audio) {
            auto backend = make_tts(cfg);
            auto render = audio::render_chapter_audio(manuscript, cfg, *backend, &trace);
            audio::write_wav(render.audio, dir / "audio" / "chapter.wav");
            runner.write_outputs(manuscript, static_cast<int>(render.plan.chunks.size()));
        }

        std::lock_guard lock(err_mutex);
        err << "[" << chapter.chapter_id << "] manuscript written to " << dir.string() << "\n";
        return 0;
    } catch (const NoValidTopics& e) {
        std::lock_guard lock(err_mutex);
        err << "[" << chapter.chapter_id << "] no valid topics: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::lock_guard lock(err_mutex);
        err << "[" << chapter.chapter_id << "] failed: " << e.what() << "\n";
        return 1;
    }
}

} // namespace

int cmd_run(const RunOptions& options, std::ostream&, std::ostream& err) {
    domain::PipelineConfig cfg;
    std::vector<domain::Chapter> chapters;
    try {
        cfg = build_config(options);
        chapters = ingest::load_book(options.manifest, cfg);
        if (!options.chapter.empty()) {
            auto it = std::find_if(chapters.begin(), chapters.end(), [&](const auto& c) {
                return c.chapter_id == options.chapter;
            });
            if (it == chapters.end()) {
                throw ManifestError("manifest has no chapter " + options.chapter);
            }
            chapters = {*it};
        }
        if (options.jobs < 1) throw ConfigError("--jobs must be >= 1");
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    agents::PromptLibrary prompts = [&] {
        return agents::PromptLibrary::load(cfg.prompt_dir, cfg.prompt_language);
    }();

    std::vector<int> results(chapters.size(), 1);
    std::atomic<std::size_t> cursor{0};
    std::mutex err_mutex;
    auto work = [&] {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= chapters.size()) break;
            results[i] = run_one_chapter(chapters[i], cfg, prompts, options, err_mutex, err);
        }
    };

    const int threads =
        std::clamp(options.jobs, 1, static_cast<int>(std::max<std::size_t>(chapters.size(), 1)));
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    if (std::any_of(results.begin(), results.end(), [](int r) { return r == 1; })) return 1;
    if (std::any_of(results.begin(), results.end(), [](int r) { return r == 2; })) return 2;
    return 0;
}

int cmd_resume(const ResumeOptions& options, std::ostream&, std::ostream& err) {
    try {
        pipeline::RunStore store(options.run_dir);
        auto chapter_json = store.read_json("chapter.json");
        if (!chapter_json) {
            throw PreconditionError("not a run directory (no chapter snapshot): " +
                                    options.run_dir);
        }
        const auto chapter_id = chapter_json->at("chapter_id").get<std::string>();

        auto provider = make_provider(options.provider, chapter_id);
        PipelineTrace trace;
        pipeline::resume_chapter(options.run_dir, *provider, trace);
        err << "[" << chapter_id << "] resumed; manuscript written to " << options.run_dir
            << "\n";
        return 0;
    } catch (const NoValidTopics& e) {
        err << "no valid topics: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_inspect(const InspectOptions& options, std::ostream& out, std::ostream& err) {
    try {
        pipeline::RunStore store(options.run_dir);

        std::optional<Stage> stage_filter;
        if (options.stage) stage_filter = stage_from_string(*options.stage);

        PipelineTrace trace;
        if (auto jsonl = store.read_text("trace.jsonl")) {
            std::istringstream lines(*jsonl);
            std::string line;
            std::vector<TraceRecord> records;
            while (std::getline(lines, line)) {
                if (line.empty()) continue;
                records.push_back(ijson::parse(line).get<TraceRecord>());
            }
            trace.append_slice(records);
        } else {
            // no final trace yet; stitch together whatever checkpoints exist
            auto load_unit = [&](const std::string& unit) -> std::optional<ijson> {
                return store.read_json(pipeline::RunStore::unit_path(unit));
            };
            auto append_unit = [&](const ijson& j) {
                std::vector<TraceRecord> slice;
                for (const auto& rj : j.at("trace")) slice.push_back(rj.get<TraceRecord>());
                trace.append_slice(slice);
            };
            auto tci = load_unit("tci");
            if (!tci) {
                throw PreconditionError("no trace or checkpoints under " + options.run_dir);
            }
            append_unit(*tci);
            auto result = tci->at("artifact").get<pipeline::TciResult>();
            for (const char* stage : {"pi/", "or/"}) {
                for (const auto& topic : result.topics) {
                    if (auto j = load_unit(stage + std::to_string(topic.index))) append_unit(*j);
                }
            }
            if (auto j = load_unit("rr")) append_unit(*j);
        }

        std::map<Stage, int> per_stage;
        int agent_calls = 0;
        for (const auto& r : trace.records()) {
            if (r.stage != Stage::Audio) ++agent_calls;
            ++per_stage[r.stage];
        }
        out << "agent_calls: " << agent_calls << "\n";
        out << "stage_calls:";
        for (Stage s : {Stage::Tci, Stage::Pi, Stage::Or, Stage::Rr, Stage::Audio}) {
            out << " " << to_string(s) << "=" << (per_stage.count(s) ? per_stage[s] : 0);
        }
        out << "\n";

        if (auto meta = store.read_json("metadata.json")) {
            out << "rounds:";
            for (const auto& [unit, round] : meta->at("rounds").items()) {
                out << " " << unit << "=" << round.get<int>();
            }
            out << "\n";
            const auto& warnings = meta->at("warnings");
            if (warnings.empty()) {
                out << "warnings: none\n";
            } else {
                out << "warnings:\n";
                for (const auto& w : warnings) out << "  " << w.get<std::string>() << "\n";
            }
        }

        out << "trace:\n";
        for (const auto& r : trace.canonical()) {
            if (stage_filter && r.stage != *stage_filter) continue;
            if (options.topic && (!r.topic_index || *r.topic_index != *options.topic)) continue;
            ijson j;
            to_json(j, r);
            out << j.dump() << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_synth(const SynthOptions& options, std::ostream&, std::ostream& err) {
    try {
        pipeline::RunStore store(options.run_dir);
        if (!store.read_json(pipeline::RunStore::unit_path("rr"))) {
            throw PreconditionError("run has no manuscript yet; run or resume it first");
        }
        auto cfg_json = store.read_json("config.json");
        auto chapter_json = store.read_json("chapter.json");
        if (!cfg_json || !chapter_json) {
            throw PreconditionError("not a run directory (missing snapshots): " +
                                    options.run_dir);
        }
        auto cfg = cfg_json->get<domain::PipelineConfig>();
        auto chapter = chapter_json->get<domain::Chapter>();

        auto prompts = agents::PromptLibrary::load(cfg.prompt_dir, cfg.prompt_language);
        NullProvider provider;
        PipelineTrace trace;
        gateway::Gateway gw(provider, trace, cfg);
        pipeline::ChapterRunner runner(chapter, cfg, gw, prompts, trace, options.run_dir);
        auto manuscript = runner.run();

        auto backend = make_tts(cfg);
        auto render = audio::render_chapter_audio(manuscript, cfg, *backend, &trace);
        audio::write_wav(render.audio,
                         std::filesystem::path(options.run_dir) / "audio" / "chapter.wav");
        runner.write_outputs(manuscript, static_cast<int>(render.plan.chunks.size()));

        err << "[" << chapter.chapter_id << "] audio written to " << options.run_dir
            << "/audio/chapter.wav\n";
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace interpcast::cli

// Copyright 2026 The fpdiff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fpdiff/campaign/campaign.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "fpdiff/diffexec/execute.hpp"
#include "fpdiff/llm/prompts.hpp"
#include "fpdiff/llm/sanitize.hpp"
#include "fpdiff/program/structure.hpp"

namespace fpdiff::campaign {

namespace fs = std::filesystem;
using nlohmann::json;
using Clock = std::chrono::steady_clock;
using compile::OptLevel;
using diffexec::ComparisonMode;
using diffexec::ComparisonRecord;
using diffexec::Exclusion;

namespace {

std::string numbered(char prefix, std::uint64_t n) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%c%06" PRIu64, prefix, n);
  return buf;
}

std::string fingerprint(const CampaignConfig& config) {
  json j = to_json(config);
  // Neither changes results.
  j.erase("campaign_dir");
  j.erase("workers");
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a64(j.dump()));
  return buf;
}

std::vector<std::string> compiler_names(const CampaignConfig& config) {
  std::vector<std::string> names;
  for (const auto& c : config.compilers) names.push_back(c.name);
  return names;
}

std::vector<program::Param> compute_params(const program::ProgramSource& src) {
  const auto tokens = program::tokenize_c(src.text);
  for (const auto& f : program::find_functions(tokens)) {
    if (f.name == "compute") return program::parse_compute_signature(tokens, f).params;
  }
  throw program::TranslateError("no compute function");
}

std::string_view kind_name(program::ParamKind k) {
  switch (k) {
    case program::ParamKind::Int: return "int";
    case program::ParamKind::Scalar: return "scalar";
    case program::ParamKind::Pointer: return "pointer";
  }
  return "?";
}

json inputs_json(const program::InputVector& in) {
  json values = json::array();
  for (const auto& v : in.values) {
    values.push_back({{"name", v.name}, {"kind", kind_name(v.kind)}, {"values", v.values}});
  }
  return {{"seed", in.rng_seed}, {"values", values}, {"argv", in.to_argv()}};
}

std::unique_ptr<llm::LlmBackend> make_backend(const BackendConfig& b) {
  if (b.kind == BackendKind::Mock) return std::make_unique<llm::MockBackend>(b.mock);
  return std::make_unique<llm::HttpBackend>(b.http);
}

std::string first_line(const std::string& text) {
  const auto nl = text.find('\n');
  return nl == std::string::npos ? text : text.substr(0, nl);
}

std::int64_t unix_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

// Outcome of one generation attempt before compilation.
struct Generated {
  std::optional<program::ProgramSource> source;
  std::string reject_class;
  std::string reject_reason;
};

class Runner {
 public:
  Runner(const CampaignConfig& config, const RunOptions& options)
      : cfg_(config), opt_(options), dir_(config.campaign_dir) {}

  CampaignReport run();

 private:
  void log(const std::string& line) {
    if (opt_.log) *opt_.log << line << '\n';
  }
  void start();
  void attempt();
  Generated generate(std::uint64_t k, json& event);
  void commit(std::vector<json> records, std::vector<json> exclusions, json event);

  const CampaignConfig& cfg_;
  const RunOptions& opt_;
  fs::path dir_;
  CampaignState state_;
  std::shared_ptr<llm::LlmBackend> backend_;
  std::size_t workers_ = 1;
  Clock::time_point started_;
  std::chrono::nanoseconds prior_wall_{0};
};

void Runner::start() {
  validate(cfg_);
  workers_ = cfg_.workers ? cfg_.workers : default_worker_count();
  auto toolchains = probe_all(cfg_);
  for (const auto& c : cfg_.compilers) {
    if (c.role == compile::CompilerRole::Device) {
      compile::check_device_available();
      break;
    }
  }
  fs::create_directories(dir_);
  for (const char* sub : {"programs", "prompts", "build", "report"}) {
    fs::create_directories(dir_ / sub);
  }
  const std::string fp = fingerprint(cfg_);
  if (fs::exists(dir_ / kManifestFile)) {
    state_ = resume_state(dir_);
    if (state_.config_fingerprint != fp) {
      throw ConfigError("campaign directory '" + dir_.string() +
                        "' was started with a different configuration");
    }
    log("resuming after attempt " + std::to_string(state_.attempts));
  } else {
    for (const char* logf : {kRecordsFile, kExclusionsFile, kEventsFile}) {
      write_file((dir_ / logf).string(), "");
      state_.committed_bytes[logf] = 0;
    }
    state_.config_fingerprint = fp;
  }
  state_.toolchains = std::move(toolchains);
  write_file_atomic((dir_ / kConfigFile).string(), to_json(cfg_).dump(2) + "\n");
  if (opt_.backend) {
    backend_ = opt_.backend;
  } else if (cfg_.backend) {
    backend_ = make_backend(*cfg_.backend);
  }
  prior_wall_ = state_.time.wall;
  commit_state(dir_, state_);
}

Generated Runner::generate(std::uint64_t k, json& event) {
  Generated g;
  if (cfg_.mode == GeneratorMode::GrammarRandom) {
    const std::uint64_t seed = derive_seed(cfg_.seed, "program", k);
    g.source = program::generate_random_program(seed, cfg_.generator);
    event["strategy"] = "grammar-random";
    event["generator_seed"] = seed;
    return g;
  }
  // The draw sees the successful set as committed by earlier attempts.
  Rng rng(derive_seed(cfg_.seed, "strategy", k));
  const double p = cfg_.mode == GeneratorMode::Hybrid ? cfg_.p_mutation : 0.0;
  const llm::Strategy strategy = llm::select_strategy(rng, state_.successful.size(), p);
  event["strategy"] = llm::to_string(strategy);
  event["successful_set_size"] = state_.successful.size();
  llm::Prompt prompt;
  if (strategy == llm::Strategy::FeedbackMutation) {
    const std::string parent = pick_mutation_parent(state_.successful, rng);
    event["parent"] = parent;
    const std::string parent_text = read_file((dir_ / "programs" / (parent + ".c")).string());
    prompt = llm::build_mutation_prompt(parent_text, parent, cfg_.precision);
  } else {
    prompt = llm::build_grammar_prompt(cfg_.precision);
  }
  const std::string stem = numbered('a', k);
  const fs::path prompt_file = fs::path("prompts") / (stem + ".prompt.txt");
  write_file((dir_ / prompt_file).string(), prompt.text);
  event["prompt"] = prompt_file.string();

  llm::SamplingParams params = cfg_.sampling;
  params.seed = derive_seed(cfg_.seed, "llm", k);
  const llm::RetryPolicy retry = cfg_.backend ? cfg_.backend->retry : llm::RetryPolicy{};
  std::string raw;
  try {
    raw = llm::generate(*backend_, prompt, params, cfg_.timeouts.llm, retry);
  } catch (const llm::BackendError& e) {
    g.reject_class = "backend-error";
    g.reject_reason = e.what();
    return g;
  }
  const fs::path response_file = fs::path("prompts") / (stem + ".response.txt");
  write_file((dir_ / response_file).string(), raw);
  event["response"] = response_file.string();
  try {
    program::ProgramSource src = llm::sanitize_response(raw, cfg_.precision);
    program::ProgramSource harnessed = program::attach_harness(src);
    harnessed.provenance.kind = strategy == llm::Strategy::FeedbackMutation
                                    ? program::Provenance::Kind::LlmMutation
                                    : program::Provenance::Kind::LlmGrammar;
    harnessed.provenance.seed = *params.seed;
    harnessed.provenance.prompt_id = stem;
    if (prompt.parent_program_id) harnessed.provenance.parent_id = *prompt.parent_program_id;
    g.source = std::move(harnessed);
  } catch (const llm::RejectedProgram& e) {
    g.reject_class = "invalid-structure";
    g.reject_reason = e.reason();
  } catch (const program::TranslateError& e) {
    g.reject_class = "harness";
    g.reject_reason = e.what();
  } catch (const program::LexError& e) {
    g.reject_class = "invalid-structure";
    g.reject_reason = e.what();
  }
  return g;
}

void Runner::commit(std::vector<json> records, std::vector<json> exclusions, json event) {
  state_.committed_bytes[kRecordsFile] = append_lines(dir_ / kRecordsFile, records);
  state_.committed_bytes[kExclusionsFile] = append_lines(dir_ / kExclusionsFile, exclusions);
  event["committed_unix_ms"] = unix_ms();
  state_.committed_bytes[kEventsFile] = append_lines(dir_ / kEventsFile, {event});
  state_.time.wall = prior_wall_ + (Clock::now() - started_);
  commit_state(dir_, state_);
}

void Runner::attempt() {
  const std::uint64_t k = state_.attempts;
  json event = {{"attempt", k}};
  const auto t0 = Clock::now();
  Generated g = generate(k, event);
  const auto t1 = Clock::now();
  state_.time.generation += t1 - t0;

  auto reject = [&](const std::string& cls, const std::string& reason) {
    event["status"] = "rejected";
    event["reason"] = reason;
    ++state_.attempts;
    ++state_.rejected;
    ++state_.rejections[cls];
    log(numbered('a', k) + " rejected: " + first_line(reason));
    commit({}, {}, std::move(event));
  };
  if (!g.source) return reject(g.reject_class, g.reject_reason);

  const std::string id = numbered('p', state_.accepted);
  program::ProgramSource& src = *g.source;
  std::vector<program::Param> params;
  try {
    params = compute_params(src);
  } catch (const Error& e) {
    return reject("harness", e.what());
  }

  const fs::path build = dir_ / "build" / id;
  fs::remove_all(build);
  fs::create_directories(build);
  compile::ProgramSources sources;
  sources.c = build / (id + ".c");
  write_file(sources.c.string(), src.text);
  std::optional<program::ProgramSource> cuda;
  bool need_cuda = false;
  for (const auto& c : cfg_.compilers) need_cuda |= c.role == compile::CompilerRole::Device;
  if (need_cuda) {
    try {
      cuda = program::translate_to_cuda(src);
    } catch (const Error& e) {
      fs::remove_all(build);
      return reject("harness", e.what());
    }
    sources.cuda = build / (id + ".cu");
    write_file(sources.cuda->string(), cuda->text);
  }
  const auto jobs =
      compile::expand_matrix(id, sources, cfg_.compilers, cfg_.levels, dir_ / "build");
  const auto outcomes = compile::compile_all(jobs, cfg_.timeouts.compile, workers_);
  const auto t2 = Clock::now();
  state_.time.compilation += t2 - t1;

  std::size_t built = 0;
  for (const auto& o : outcomes) built += compile::succeeded(o);
  if (built == 0) {
    std::string diag = "no configuration compiled";
    if (const auto* f = std::get_if<compile::CompileFailure>(&outcomes.front())) {
      diag = first_line(f->diagnostics);
    }
    fs::remove_all(build);
    return reject("compile-failed", diag);
  }

  const auto inputs = diffexec::sample_inputs(params, cfg_.precision,
                                              derive_seed(cfg_.seed, "inputs", k), cfg_.inputs);
  std::vector<diffexec::ConfigResult> results(jobs.size());
  parallel_for(jobs.size(), workers_, [&](std::size_t i) {
    const diffexec::ConfigId config{jobs[i].compiler.name, jobs[i].level};
    if (const auto* ok = std::get_if<compile::CompileSuccess>(&outcomes[i])) {
      results[i] = diffexec::from_execution(
          config, diffexec::execute(ok->binary, config, inputs, cfg_.precision,
                                    cfg_.timeouts.execute));
    } else if (std::holds_alternative<compile::CompileTimeout>(outcomes[i])) {
      results[i] = diffexec::from_build_failure(config, "compile timeout");
    } else {
      results[i] = diffexec::from_build_failure(config, "compile failure");
    }
  });
  diffexec::ComparisonBatch batch = diffexec::run_differential(
      id, cfg_.precision, compiler_names(cfg_), cfg_.levels, results);
  const std::vector<ComparisonRecord> cross = batch.records;
  if (cfg_.baseline) {
    for (const auto& c : cfg_.compilers) {
      auto b = diffexec::baseline_comparisons(id, cfg_.precision, c.name, cfg_.levels, results);
      batch.records.insert(batch.records.end(), b.records.begin(), b.records.end());
      batch.exclusions.insert(batch.exclusions.end(), b.exclusions.begin(),
                              b.exclusions.end());
    }
  }
  state_.time.execution += Clock::now() - t2;

  write_file((dir_ / "programs" / (id + ".c")).string(), src.text);
  if (cuda) write_file((dir_ / "programs" / (id + ".cu")).string(), cuda->text);
  write_file((dir_ / "programs" / (id + ".inputs.json")).string(),
             inputs_json(inputs).dump(2) + "\n");
  if (!cfg_.keep_binaries) fs::remove_all(build);

  std::uint64_t inconsistent = 0;
  for (const auto& r : cross) inconsistent += r.inconsistent;
  const bool was_member = state_.successful.contains(id);
  update_successful_set(state_.successful, id, cross);
  event["status"] = "accepted";
  event["program_id"] = id;
  event["provenance"] = program::to_string(src.provenance.kind);
  event["records"] = cross.size();
  event["inconsistent"] = inconsistent;
  event["successful"] = !was_member && state_.successful.contains(id);

  std::vector<json> record_lines, exclusion_lines;
  for (const auto& r : batch.records) record_lines.push_back(diffexec::to_json(r));
  for (const auto& e : batch.exclusions) exclusion_lines.push_back(diffexec::to_json(e));
  ++state_.attempts;
  ++state_.accepted;
  state_.programs.push_back(id);
  log(id + " (" + numbered('a', k) + "): " + std::to_string(inconsistent) + "/" +
      std::to_string(cross.size()) + " inconsistent, " +
      std::to_string(batch.exclusions.size()) + " excluded");
  commit(std::move(record_lines), std::move(exclusion_lines), std::move(event));
}

CampaignReport Runner::run() {
  started_ = Clock::now();
  start();
  while (!state_.complete && state_.accepted < cfg_.budget &&
         state_.attempts < cfg_.attempt_cap()) {
    if (opt_.stop_after_attempts && state_.attempts >= *opt_.stop_after_attempts) {
      CampaignReport partial;
      partial.totals.attempts = state_.attempts;
      partial.totals.accepted = state_.accepted;
      partial.time = state_.time;
      return partial;
    }
    attempt();
  }
  const auto t = Clock::now();
  CampaignReport report = derive_report(cfg_, dir_, state_);
  state_.time.analysis += Clock::now() - t;
  state_.complete = true;
  state_.time.wall = prior_wall_ + (Clock::now() - started_);
  commit_state(dir_, state_);
  report.time = state_.time;
  report.complete = true;
  write_report(dir_, report);
  return report;
}

std::string format_seconds(std::chrono::nanoseconds d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::chrono::duration<double>(d).count());
  return buf;
}

}  // namespace

std::map<std::string, std::string> probe_all(const CampaignConfig& config) {
  std::map<std::string, std::string> out;
  for (const auto& c : config.compilers) out[c.name] = compile::probe_toolchain(c);
  return out;
}

CampaignReport run_campaign(const CampaignConfig& config, const RunOptions& options) {
  Runner runner(config, options);
  return runner.run();
}

CampaignReport derive_report(const CampaignConfig& config, const fs::path& dir,
                             const CampaignState& state) {
  const auto all_records = read_records(dir, state);
  const auto all_exclusions = read_exclusions(dir, state);
  std::vector<ComparisonRecord> cross, baseline;
  for (const auto& r : all_records) {
    (r.mode == ComparisonMode::Cross ? cross : baseline).push_back(r);
  }
  std::uint64_t cross_excluded = 0, baseline_excluded = 0;
  for (const auto& e : all_exclusions) {
    (e.mode == ComparisonMode::Cross ? cross_excluded : baseline_excluded) += 1;
  }
  const auto names = compiler_names(config);
  CampaignReport r;
  Totals& t = r.totals;
  t.budget = config.budget;
  t.attempt_cap = config.attempt_cap();
  t.attempts = state.attempts;
  t.accepted = state.accepted;
  t.rejected = state.rejected;
  t.rejections = state.rejections;
  t.cap_reached = state.accepted < config.budget && state.attempts >= config.attempt_cap();
  t.successful = state.successful.size();
  t.baseline_records = baseline.size();
  for (const auto& b : baseline) t.baseline_inconsistent += b.inconsistent;
  t.baseline_exclusions = baseline_excluded;

  // Rates are over accepted programs; an empty campaign reports zeros.
  const std::uint64_t n = std::max<std::uint64_t>(state.accepted, 1);
  r.summary = analysis::summarize(cross, cross_excluded, n, names.size(), config.levels.size());
  r.summary.programs = state.accepted;
  if (state.accepted == 0) r.summary.nominal = 0;
  r.kinds = analysis::kind_distribution(cross, config.levels);
  r.pairs = analysis::compiler_pair_table(cross, n, names, config.levels);
  r.pairs.programs = state.accepted;
  if (config.baseline) {
    r.baseline = analysis::baseline_table(baseline, n, names, config.levels);
    r.baseline->programs = state.accepted;
  }
  if (config.diversity) {
    std::vector<std::string> corpus;
    for (const auto& id : state.programs) {
      corpus.push_back(read_file((dir / "programs" / (id + ".c")).string()));
    }
    if (corpus.size() >= 2) {
      const std::size_t workers = config.workers ? config.workers : default_worker_count();
      try {
        r.similarity = analysis::mean_pairwise_similarity(corpus, {}, workers);
      } catch (const analysis::DomainError&) {
      }
    }
    r.clones = analysis::detect_clones(corpus);
  }
  r.time = state.time;
  r.toolchains = state.toolchains;
  r.complete = state.complete;
  return r;
}

std::string render_tables(const CampaignReport& r) {
  const Totals& t = r.totals;
  std::string out;
  out += "Budget: " + std::to_string(t.accepted) + " of " + std::to_string(t.budget) +
         " programs accepted in " + std::to_string(t.attempts) + " attempts (cap " +
         std::to_string(t.attempt_cap) + ")";
  out += t.cap_reached ? ", attempt cap reached\n" : "\n";
  out += "Rejected: " + std::to_string(t.rejected);
  for (const auto& [cls, count] : t.rejections) out += ", " + cls + " " + std::to_string(count);
  out += "\nSuccessful programs: " + std::to_string(t.successful) + "\n\n";
  out += analysis::render_text(r.summary) + "\n";
  out += analysis::render_text(r.kinds) + "\n";
  out += analysis::render_text(r.pairs);
  if (r.baseline) {
    out += "\n" + analysis::render_text(*r.baseline);
    out += "Baseline comparisons: " + std::to_string(t.baseline_records) + ", inconsistent " +
           std::to_string(t.baseline_inconsistent) + ", excluded " +
           std::to_string(t.baseline_exclusions) + "\n";
  }
  if (r.similarity || r.clones) out += "\nDiversity\n";
  if (r.similarity) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "  similarity (syntax proxy): %.4f over %zu pairs\n",
                  r.similarity->mean, r.similarity->pairs);
    out += buf;
  }
  if (r.clones) {
    const auto& c = *r.clones;
    out += "  clone pairs (exclusive): Type-1 " + std::to_string(c.exclusive.type1) +
           ", Type-2c " + std::to_string(c.exclusive.type2c) + ", Type-2 " +
           std::to_string(c.exclusive.type2) + "\n";
    out += "  clone pairs (cumulative): Type-1 " + std::to_string(c.cumulative.type1) +
           ", Type-2c " + std::to_string(c.cumulative.type2c) + ", Type-2 " +
           std::to_string(c.cumulative.type2) + "\n";
    out += "  programs in a clone pair: " + std::to_string(c.participating) + " (" +
           analysis::format_percent(c.fraction()) + ")\n";
  }
  return out;
}

json tables_json(const CampaignReport& r) {
  const Totals& t = r.totals;
  json j;
  j["totals"] = {{"budget", t.budget},
                 {"attempt_cap", t.attempt_cap},
                 {"attempts", t.attempts},
                 {"accepted", t.accepted},
                 {"rejected", t.rejected},
                 {"rejections", t.rejections},
                 {"cap_reached", t.cap_reached},
                 {"successful", t.successful},
                 {"baseline_records", t.baseline_records},
                 {"baseline_inconsistent", t.baseline_inconsistent},
                 {"baseline_exclusions", t.baseline_exclusions}};
  j["summary"] = analysis::to_json(r.summary);
  j["kind_distribution"] = analysis::to_json(r.kinds);
  j["compiler_pairs"] = analysis::to_json(r.pairs);
  j["baseline"] = r.baseline ? analysis::to_json(*r.baseline) : json();
  if (r.similarity) {
    j["similarity"] = {{"metric", "similarity (syntax proxy)"},
                       {"mean", r.similarity->mean},
                       {"pairs", r.similarity->pairs},
                       {"skipped_programs", r.similarity->skipped_programs}};
  } else {
    j["similarity"] = nullptr;
  }
  j["clones"] = r.clones ? analysis::to_json(*r.clones) : json();
  return j;
}

json report_json(const CampaignReport& r) {
  json j = tables_json(r);
  j["time_seconds"] = {
      {"generation", std::chrono::duration<double>(r.time.generation).count()},
      {"compilation", std::chrono::duration<double>(r.time.compilation).count()},
      {"execution", std::chrono::duration<double>(r.time.execution).count()},
      {"analysis", std::chrono::duration<double>(r.time.analysis).count()},
      {"wall", std::chrono::duration<double>(r.time.wall).count()}};
  j["toolchains"] = r.toolchains;
  j["complete"] = r.complete;
  j["network_requests"] = llm::network_request_count();
  return j;
}

void write_report(const fs::path& dir, const CampaignReport& report) {
  const fs::path out = dir / "report";
  fs::create_directories(out);
  write_file_atomic((out / "tables.txt").string(), render_tables(report));
  write_file_atomic((out / "tables.json").string(), tables_json(report).dump(2) + "\n");
  std::string times = "Time (s): generation " + format_seconds(report.time.generation) +
                      ", compilation " + format_seconds(report.time.compilation) +
                      ", execution " + format_seconds(report.time.execution) +
                      ", analysis " + format_seconds(report.time.analysis) + ", wall " +
                      format_seconds(report.time.wall) + "\n";
  for (const auto& [name, version] : report.toolchains) times += name + ": " + version + "\n";
  write_file_atomic((out / "timing.txt").string(), times);
  write_file_atomic((out / "report.json").string(), report_json(report).dump(2) + "\n");
}

CampaignReport regenerate_report(const fs::path& dir) {
  if (!fs::exists(dir / kManifestFile)) {
    throw CorruptState(dir / kManifestFile, "missing; not a campaign directory");
  }
  CampaignConfig config = load_config(dir / kConfigFile);
  const CampaignState state = load_state(dir);
  CampaignReport report = derive_report(config, dir, state);
  fs::create_directories(dir / "report");
  write_file_atomic((dir / "report" / "tables.txt").string(), render_tables(report));
  write_file_atomic((dir / "report" / "tables.json").string(),
                    tables_json(report).dump(2) + "\n");
  return report;
}

}  // namespace fpdiff::campaign

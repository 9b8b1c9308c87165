// tsrkit command line: synth | ingest | render | annotate | judge | evaluate
// | report, driven by one JSON config plus a few overrides.

#include <cstdio>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "tsrkit/cli/pipeline.hpp"

namespace {

struct GlobalArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool mock_providers = false;
  bool lenient = false;
};

tsrkit::cli::PipelineConfig resolve_config(const GlobalArgs& args) {
  tsrkit::cli::PipelineConfig cfg =
      args.config_path.empty() ? tsrkit::cli::default_config() : tsrkit::cli::load_config(args.config_path);
  if (args.seed_set) cfg.seed = args.seed;
  if (!args.out_dir.empty()) cfg.paths.out_dir = args.out_dir;
  if (args.mock_providers) cfg.mock_providers = true;
  if (args.lenient) cfg.strict_quarantine = false;
  return cfg;
}

int finish(const tsrkit::cli::StageResult& res) {
  if (!res.summary.empty()) std::cout << res.summary << "\n";
  return res.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anomaly-reasoning dataset pipeline"};
  app.require_subcommand(1);

  GlobalArgs args;
  app.add_option("--config", args.config_path, "pipeline config file (JSON)");
  app.add_option("--out-dir", args.out_dir, "output directory override");
  auto* seed_opt = app.add_option("--seed", args.seed, "master seed override");
  app.add_flag("--mock-providers", args.mock_providers, "force deterministic offline providers");
  app.add_flag("--lenient", args.lenient, "exit 0 even when samples are quarantined");

  auto* synth = app.add_subcommand("synth", "generate synthetic samples");
  std::size_t count_override = 0;
  synth->add_option("--count", count_override, "number of samples");

  auto* ing = app.add_subcommand("ingest", "segment a delimited numeric table");
  std::string ingest_input, ingest_domain, ingest_context, ingest_label;
  ing->add_option("--input", ingest_input, "input table (csv)")->required();
  ing->add_option("--domain", ingest_domain, "source domain string")->required();
  ing->add_option("--context", ingest_context, "context text attached to every sample");
  ing->add_option("--label-col", ingest_label, "header name of the 0/1 label column");

  app.add_subcommand("render", "render charts for all samples");
  app.add_subcommand("annotate", "collect pool completions");
  app.add_subcommand("judge", "rank, critique and emit the final dataset");

  auto* eval = app.add_subcommand("evaluate", "score predictions against the dataset");
  std::string pred_path, gold_path;
  eval->add_option("--pred", pred_path, "prediction records (jsonl)")->required();
  eval->add_option("--gold", gold_path, "gold records (defaults to the judged dataset)");

  app.add_subcommand("report", "dataset statistics and metric tables");

  auto* exp = app.add_subcommand("export-templates", "write the embedded templates to a directory");
  std::string export_dir = "templates";
  exp->add_option("--dir", export_dir, "destination directory");

  CLI11_PARSE(app, argc, argv);
  args.seed_set = seed_opt->count() > 0;

  try {
    auto cfg = resolve_config(args);
    if (app.got_subcommand("synth")) {
      if (count_override > 0) cfg.sample_count = count_override;
      return finish(tsrkit::cli::run_synth(cfg));
    }
    if (app.got_subcommand("ingest")) {
      tsrkit::cli::IngestOptions opts;
      opts.domain = ingest_domain;
      opts.context = ingest_context;
      opts.lengths = cfg.lengths;
      opts.seed = cfg.seed;
      if (!ingest_label.empty()) opts.label_column = ingest_label;
      cfg.paths.input = ingest_input;
      return finish(tsrkit::cli::run_ingest(cfg, opts));
    }
    if (app.got_subcommand("render")) return finish(tsrkit::cli::run_render(cfg));
    if (app.got_subcommand("annotate")) return finish(tsrkit::cli::run_annotate(cfg));
    if (app.got_subcommand("judge")) return finish(tsrkit::cli::run_judge(cfg));
    if (app.got_subcommand("evaluate"))
      return finish(tsrkit::cli::run_evaluate(cfg, pred_path, gold_path));
    if (app.got_subcommand("report")) return finish(tsrkit::cli::run_report(cfg));
    if (app.got_subcommand("export-templates")) {
      namespace fs = std::filesystem;
      const auto& t = tsrkit::prompt::TemplateSet::builtin();
      fs::create_directories(fs::path(export_dir) / "exemplars" / "univariate");
      fs::create_directories(fs::path(export_dir) / "exemplars" / "multivariate");
      auto write = [](const fs::path& p, const std::string& text) {
        std::ofstream out(p, std::ios::binary | std::ios::trunc);
        out << text << '\n';
      };
      write(fs::path(export_dir) / "instruction_univariate.txt", t.instruction_univariate);
      write(fs::path(export_dir) / "instruction_multivariate.txt", t.instruction_multivariate);
      write(fs::path(export_dir) / "annotation.txt", t.annotation);
      write(fs::path(export_dir) / "critique.txt", t.critique);
      for (const auto& e : t.exemplars) {
        const auto cat = tsrkit::find_category(e.category, e.arity);
        char prefix[8];
        std::snprintf(prefix, sizeof(prefix), "%02d_", cat ? cat->id : 99);
        write(fs::path(export_dir) / "exemplars" / tsrkit::to_string(e.arity) /
                  (prefix + tsrkit::prompt::detail::slug(e.category) + ".txt"),
              e.text);
      }
      std::cout << "templates written to " << export_dir << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

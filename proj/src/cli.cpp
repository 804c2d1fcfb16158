#include "tweetsense/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "tweetsense/analytics.hpp"
#include "tweetsense/corpus.hpp"
#include "tweetsense/emotion.hpp"
#include "tweetsense/errors.hpp"
#include "tweetsense/geo.hpp"
#include "tweetsense/neural.hpp"
#include "tweetsense/sentiment.hpp"
#include "tweetsense/util.hpp"

namespace tweetsense::cli {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

struct Options {
    std::string in;
    std::string out;
    std::string format = "jsonl";
    std::string report_format = "csv";
    std::string lexicon;
    std::string emotion_lexicon;
    std::string cities;
    std::string cases;
    std::string model = "mlp";
    std::string metric = "pos_share";
    std::string kind = "sentiment";
    std::string granularity = "month";
    std::string country;
    std::string denominator = "all";
    std::string mode = "cumulative";
    std::string history;
    bool strict = false;
    double pos_threshold = 0.05;
    double neg_threshold = -0.05;
    long long min_tweets = 30;
    std::size_t k = 10;
    std::uint64_t seed = 42;
    std::size_t epochs = 10;
    std::size_t batch = 32;
    double lr = 0.001;
    double train_frac = 0.8;
    std::uint32_t vocab = 5000;
    std::size_t hidden = 64;
    std::size_t maxlen = 40;
    std::size_t embed_dim = 32;
    std::size_t units = 64;
    std::size_t kernel = 3;
    std::size_t filters = 64;
    double dropout = 0.5;
};

Granularity granularity_of(const std::string& s) {
    return s == "day" ? Granularity::Day : Granularity::Month;
}

Denominator denominator_of(const std::string& s) {
    return s == "posneg" ? Denominator::PosNegOnly : Denominator::All;
}

std::optional<std::string> country_filter_of(const std::string& s) {
    if (s.empty() || s == "ALL") return std::nullopt;
    return s;
}

std::vector<TweetRecord> load_corpus(const std::string& path,
                                     std::string_view format, bool strict,
                                     std::ostream& err) {
    IngestOptions options;
    options.strict = strict;
    IngestStats stats;
    auto corpus = ingest_tweets(path, format, options, &stats);
    for (const std::string& w : stats.warnings) err << "warning: " << w << "\n";
    return corpus;
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw DataError("failed writing " + path.string());
}

void require_parent_dir(const std::string& path) {
    fs::path parent = fs::path(path).parent_path();
    if (!parent.empty()) fs::create_directories(parent);
}

// ---------------------------------------------------------------------------
// stage commands
// ---------------------------------------------------------------------------

int cmd_ingest(const Options& opt, std::ostream& out, std::ostream& err) {
    IngestOptions options;
    options.strict = opt.strict;
    IngestStats stats;
    auto corpus = ingest_tweets(opt.in, opt.format, options, &stats);
    for (const std::string& w : stats.warnings) err << "warning: " << w << "\n";
    require_parent_dir(opt.out);
    export_corpus_jsonl(corpus, opt.out);
    out << "ingested " << stats.kept << " records ("
        << stats.dropped_duplicates << " duplicates dropped, "
        << stats.skipped_malformed << " malformed skipped) -> " << opt.out
        << "\n";
    return kOk;
}

int cmd_label(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    SentimentLexicon lex = SentimentLexicon::load(opt.lexicon);
    Thresholds t{opt.pos_threshold, opt.neg_threshold};
    LabelCounts counts = label_corpus(corpus, lex, t);
    require_parent_dir(opt.out);
    export_corpus_jsonl(corpus, opt.out);
    out << "labeled " << corpus.size() << " records: " << counts.positive
        << " positive, " << counts.neutral << " neutral, " << counts.negative
        << " negative -> " << opt.out << "\n";
    return kOk;
}

int cmd_resolve(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    PlaceIndex index = PlaceIndex::build(opt.cities);
    ResolveStats stats = resolve_corpus(corpus, index);
    require_parent_dir(opt.out);
    export_corpus_jsonl(corpus, opt.out);
    out << "resolved " << stats.resolved << " locations ("
        << stats.ambiguous << " ambiguous, " << stats.unresolved
        << " unresolved, " << stats.no_location << " without location) -> "
        << opt.out << "\n";
    return kOk;
}

int cmd_emotions(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    EmotionLexicon lex = EmotionLexicon::load(opt.emotion_lexicon);
    std::size_t with_emotion = 0;
    for (TweetRecord& r : corpus) {
        r.emotion = score_emotions(r.text, lex);
        if (r.emotion->total() > 0) ++with_emotion;
    }
    require_parent_dir(opt.out);
    export_corpus_jsonl(corpus, opt.out);
    out << "scored " << corpus.size() << " records; " << with_emotion
        << " carry at least one emotion -> " << opt.out << "\n";
    return kOk;
}

// ---------------------------------------------------------------------------
// series commands
// ---------------------------------------------------------------------------

int cmd_aggregate(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    std::vector<SeriesPoint> series;
    if (opt.kind == "emotion") {
        series = aggregate_emotion(corpus, granularity_of(opt.granularity),
                                   country_filter_of(opt.country));
    } else {
        series = aggregate_sentiment(corpus, granularity_of(opt.granularity),
                                     country_filter_of(opt.country),
                                     denominator_of(opt.denominator));
    }
    require_parent_dir(opt.out);
    export_report(series, opt.out, opt.report_format);
    out << "wrote " << series.size() << " " << opt.granularity << " periods ("
        << opt.kind << ") -> " << opt.out << "\n";
    return kOk;
}

int cmd_cases(const Options& opt, std::ostream& out, std::ostream& err) {
    IngestStats stats;
    auto table = ingest_cases(opt.in, &stats);
    for (const std::string& w : stats.warnings) err << "warning: " << w << "\n";
    CasesMode mode = opt.mode == "daily-new" ? CasesMode::DailyNew
                                             : CasesMode::Cumulative;
    auto series = cases_series(table, country_filter_of(opt.country),
                               granularity_of(opt.granularity), mode);
    require_parent_dir(opt.out);
    export_report(series, opt.out, opt.report_format);
    out << "wrote " << series.size() << " " << opt.granularity
        << " periods of " << opt.mode << " confirmed cases -> " << opt.out
        << "\n";
    return kOk;
}

ExtremeMetric metric_of(const std::string& s) {
    if (s == "neg_share") return ExtremeMetric::NegShare;
    if (s == "fear_score") return ExtremeMetric::FearScore;
    if (s == "trust_score") return ExtremeMetric::TrustScore;
    return ExtremeMetric::PosShare;
}

std::string extremes_to_string(const std::vector<CountryScore>& ranked,
                               const std::string& metric,
                               std::string_view format) {
    if (format == "csv") {
        std::string text = "country,n_tweets,metric,value\n";
        for (const CountryScore& row : ranked) {
            text += csv_escape(row.country) + ','
                    + std::to_string(row.n_tweets) + ',' + metric + ','
                    + format_fixed(row.value, 6) + '\n';
        }
        return text;
    }
    if (format == "json") {
        ordered_json doc = ordered_json::array();
        for (const CountryScore& row : ranked) {
            ordered_json item;
            item["country"] = row.country;
            item["n_tweets"] = row.n_tweets;
            item["metric"] = metric;
            item["value"] = row.value;
            doc.push_back(std::move(item));
        }
        return doc.dump(2) + "\n";
    }
    throw DataError("unknown report format '" + std::string(format) + "'");
}

int cmd_extremes(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    auto ranked =
        country_extremes(corpus, metric_of(opt.metric), opt.k, opt.min_tweets);
    require_parent_dir(opt.out);
    write_text_file(opt.out,
                    extremes_to_string(ranked, opt.metric, opt.report_format));
    out << "top " << ranked.size() << " countries by " << opt.metric
        << " (min " << opt.min_tweets << " tweets) -> " << opt.out << "\n";
    std::size_t rank = 1;
    for (const CountryScore& row : ranked) {
        out << "  " << rank++ << ". " << row.country << " "
            << format_fixed(row.value, 6) << " (n=" << row.n_tweets << ")\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// model commands
// ---------------------------------------------------------------------------

void collect_training_data(const std::vector<TweetRecord>& corpus,
                           std::vector<std::string>* texts,
                           std::vector<int>* labels) {
    for (const TweetRecord& r : corpus) {
        if (!r.polarity) continue;
        texts->push_back(r.text);
        labels->push_back(label_index(*r.polarity));
    }
    if (texts->empty()) throw DataError("corpus has no labeled records");
}

std::string history_csv(const std::vector<EpochStats>& history) {
    std::string text = "epoch,train_loss,train_acc,val_acc\n";
    for (std::size_t e = 0; e < history.size(); ++e) {
        text += std::to_string(e + 1) + ','
                + format_fixed(history[e].train_loss, 6) + ','
                + format_fixed(history[e].train_acc, 6) + ','
                + format_fixed(history[e].val_acc, 6) + '\n';
    }
    return text;
}

void print_history(const std::vector<EpochStats>& history, std::ostream& out) {
    for (std::size_t e = 0; e < history.size(); ++e) {
        out << "epoch " << (e + 1) << ": loss "
            << format_fixed(history[e].train_loss, 4) << ", train acc "
            << format_fixed(history[e].train_acc, 4) << ", val acc "
            << format_fixed(history[e].val_acc, 4) << "\n";
    }
}

int cmd_train(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    std::vector<std::string> texts;
    std::vector<int> labels;
    collect_training_data(corpus, &texts, &labels);

    std::vector<EpochStats> history;
    require_parent_dir(opt.out);
    if (opt.model == "lstm") {
        LstmHyper hyper;
        hyper.V = opt.vocab;
        hyper.D = opt.embed_dim;
        hyper.U = opt.units;
        hyper.K = opt.kernel;
        hyper.F = opt.filters;
        hyper.maxlen = opt.maxlen;
        hyper.dropout = opt.dropout;
        hyper.epochs = opt.epochs;
        hyper.batch = opt.batch;
        hyper.lr = opt.lr;
        hyper.train_frac = opt.train_frac;
        hyper.seed = opt.seed;
        LstmTrainResult result = train_lstm(texts, labels, hyper);
        save_checkpoint(opt.out, result.vocab, result.model);
        history = std::move(result.history);
    } else {
        MlpHyper hyper;
        hyper.V = opt.vocab;
        hyper.H = opt.hidden;
        hyper.epochs = opt.epochs;
        hyper.batch = opt.batch;
        hyper.lr = opt.lr;
        hyper.train_frac = opt.train_frac;
        hyper.seed = opt.seed;
        MlpTrainResult result = train_mlp(texts, labels, hyper);
        save_checkpoint(opt.out, result.vocab, result.model);
        history = std::move(result.history);
    }

    out << "trained " << opt.model << " on " << texts.size()
        << " labeled records (seed " << opt.seed << ")\n";
    print_history(history, out);
    out << "saved checkpoint -> " << opt.out << "\n";
    if (!opt.history.empty()) {
        require_parent_dir(opt.history);
        write_text_file(opt.history, history_csv(history));
        out << "saved history -> " << opt.history << "\n";
    }
    return kOk;
}

int cmd_evaluate(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    std::vector<std::string> texts;
    std::vector<int> labels;
    collect_training_data(corpus, &texts, &labels);

    CheckpointData ckpt = load_checkpoint(opt.model);
    EvalResult result;
    std::string kind;
    if (ckpt.kind == ModelKind::Lstm) {
        result = evaluate_lstm(ckpt.vocab, *ckpt.lstm, texts, labels);
        kind = "lstm";
    } else {
        result = evaluate_mlp(ckpt.vocab, *ckpt.mlp, texts, labels);
        kind = "mlp";
    }

    out << kind << " accuracy " << format_fixed(result.accuracy, 4) << " on "
        << texts.size() << " records\n";
    const char* names[3] = {"negative", "neutral", "positive"};
    out << "confusion (rows true, columns predicted):\n";
    for (int r = 0; r < kNumClasses; ++r) {
        out << "  " << names[r] << ":";
        for (int c = 0; c < kNumClasses; ++c) {
            out << " " << result.confusion[static_cast<std::size_t>(r)]
                                          [static_cast<std::size_t>(c)];
        }
        out << "\n";
    }

    if (!opt.out.empty()) {
        ordered_json doc;
        doc["model"] = kind;
        doc["n"] = texts.size();
        doc["accuracy"] = result.accuracy;
        doc["confusion"] = result.confusion;
        require_parent_dir(opt.out);
        write_text_file(opt.out, doc.dump(2) + "\n");
        out << "saved metrics -> " << opt.out << "\n";
    }
    return kOk;
}

// ---------------------------------------------------------------------------
// report and pipeline
// ---------------------------------------------------------------------------

std::string country_summary_csv(const std::vector<CountrySummary>& shares,
                                const std::vector<CountrySummary>& minmax) {
    std::string text =
        "country,n_tweets,pos_share,neg_share,normalized_pos,normalized_neg\n";
    for (std::size_t i = 0; i < shares.size(); ++i) {
        text += csv_escape(shares[i].country) + ','
                + std::to_string(shares[i].n_tweets) + ','
                + format_fixed(shares[i].pos_share, 6) + ','
                + format_fixed(shares[i].neg_share, 6) + ','
                + format_fixed(minmax[i].normalized_pos, 6) + ','
                + format_fixed(minmax[i].normalized_neg, 6) + '\n';
    }
    return text;
}

// Writes the full report file set into out_dir and returns the file names.
std::vector<std::string> write_report_files(
    const std::vector<TweetRecord>& corpus, const fs::path& out_dir,
    const std::optional<std::string>& cases_path, long long min_tweets,
    std::size_t k, ordered_json* summary) {
    std::vector<std::string> files;
    auto emit_series = [&](const std::string& name,
                           const std::vector<SeriesPoint>& series) {
        write_text_file(out_dir / name, report_to_string(series, "csv"));
        files.push_back(name);
    };

    emit_series("sentiment_monthly.csv",
                aggregate_sentiment(corpus, Granularity::Month));
    emit_series("sentiment_daily.csv",
                aggregate_sentiment(corpus, Granularity::Day));
    emit_series("emotion_monthly.csv",
                aggregate_emotion(corpus, Granularity::Month));
    emit_series("emotion_daily.csv",
                aggregate_emotion(corpus, Granularity::Day));

    auto shares = country_summaries(corpus, false);
    auto minmax = country_summaries(corpus, true);
    write_text_file(out_dir / "country_sentiment.csv",
                    country_summary_csv(shares, minmax));
    files.push_back("country_sentiment.csv");

    const std::pair<const char*, ExtremeMetric> extreme_files[] = {
        {"extremes_pos.csv", ExtremeMetric::PosShare},
        {"extremes_neg.csv", ExtremeMetric::NegShare},
        {"extremes_fear.csv", ExtremeMetric::FearScore},
        {"extremes_trust.csv", ExtremeMetric::TrustScore},
    };
    const char* metric_names[] = {"pos_share", "neg_share", "fear_score",
                                  "trust_score"};
    for (std::size_t i = 0; i < 4; ++i) {
        auto ranked = country_extremes(corpus, extreme_files[i].second, k,
                                       min_tweets);
        write_text_file(out_dir / extreme_files[i].first,
                        extremes_to_string(ranked, metric_names[i], "csv"));
        files.push_back(extreme_files[i].first);
    }

    if (cases_path) {
        auto table = ingest_cases(*cases_path);
        emit_series("cases_monthly.csv",
                    cases_series(table, std::nullopt, Granularity::Month,
                                 CasesMode::Cumulative));
        emit_series("cases_daily.csv",
                    cases_series(table, std::nullopt, Granularity::Day,
                                 CasesMode::Cumulative));
    }

    if (summary) {
        long long pos = 0, neu = 0, neg = 0;
        std::size_t resolved = 0, ambiguous = 0, unresolved = 0, no_location = 0;
        std::size_t with_emotion = 0;
        std::set<std::string> countries;
        for (const TweetRecord& r : corpus) {
            if (r.polarity == Polarity::Positive) ++pos;
            if (r.polarity == Polarity::Neutral) ++neu;
            if (r.polarity == Polarity::Negative) ++neg;
            if (r.country) {
                countries.insert(*r.country);
                ++(r.country_ambiguous ? ambiguous : resolved);
            } else {
                ++(r.raw_location ? unresolved : no_location);
            }
            if (r.emotion && r.emotion->total() > 0) ++with_emotion;
        }
        (*summary)["tweets"] = corpus.size();
        (*summary)["labels"] = {{"positive", pos}, {"neutral", neu},
                                {"negative", neg}};
        (*summary)["geo"] = {{"resolved", resolved},
                             {"ambiguous", ambiguous},
                             {"unresolved", unresolved},
                             {"no_location", no_location}};
        (*summary)["with_emotion"] = with_emotion;
        (*summary)["countries"] = countries.size();
    }
    return files;
}

void finish_summary(ordered_json& summary, std::vector<std::string> files,
                    const fs::path& out_dir, std::ostream& out) {
    files.push_back("summary.json");
    summary["files"] = files;
    write_text_file(out_dir / "summary.json", summary.dump(2) + "\n");
    for (const std::string& name : files) {
        out << "  " << (out_dir / name).generic_string() << "\n";
    }
}

int cmd_report(const Options& opt, std::ostream& out, std::ostream& err) {
    auto corpus = load_corpus(opt.in, "jsonl", opt.strict, err);
    fs::path out_dir(opt.out);
    fs::create_directories(out_dir);
    std::optional<std::string> cases_path;
    if (!opt.cases.empty()) cases_path = opt.cases;

    ordered_json summary;
    auto files = write_report_files(corpus, out_dir, cases_path,
                                    opt.min_tweets, opt.k, &summary);
    out << "report on " << corpus.size() << " records:\n";
    finish_summary(summary, std::move(files), out_dir, out);
    return kOk;
}

int cmd_pipeline(const Options& opt, std::ostream& out, std::ostream& err) {
    fs::path out_dir(opt.out);
    fs::create_directories(out_dir);

    IngestOptions options;
    options.strict = opt.strict;
    IngestStats stats;
    auto corpus = ingest_tweets(opt.in, opt.format, options, &stats);
    for (const std::string& w : stats.warnings) err << "warning: " << w << "\n";
    out << "ingest: " << stats.kept << " records ("
        << stats.dropped_duplicates << " duplicates, "
        << stats.skipped_malformed << " malformed)\n";

    SentimentLexicon lex = SentimentLexicon::load(opt.lexicon);
    Thresholds t{opt.pos_threshold, opt.neg_threshold};
    LabelCounts counts = label_corpus(corpus, lex, t);
    out << "label: " << counts.positive << " positive, " << counts.neutral
        << " neutral, " << counts.negative << " negative\n";

    PlaceIndex index = PlaceIndex::build(opt.cities);
    ResolveStats geo = resolve_corpus(corpus, index);
    out << "resolve: " << geo.resolved << " resolved, " << geo.ambiguous
        << " ambiguous, " << geo.unresolved << " unresolved, "
        << geo.no_location << " without location\n";

    EmotionLexicon emo = EmotionLexicon::load(opt.emotion_lexicon);
    std::size_t with_emotion = 0;
    for (TweetRecord& r : corpus) {
        r.emotion = score_emotions(r.text, emo);
        if (r.emotion->total() > 0) ++with_emotion;
    }
    out << "emotions: " << with_emotion << " records carry at least one\n";

    export_corpus_jsonl(corpus, (out_dir / "corpus_labeled.jsonl").string());

    std::optional<std::string> cases_path;
    if (!opt.cases.empty()) cases_path = opt.cases;
    ordered_json summary;
    summary["ingest"] = {{"kept", stats.kept},
                         {"duplicates", stats.dropped_duplicates},
                         {"malformed", stats.skipped_malformed}};
    auto files = write_report_files(corpus, out_dir, cases_path,
                                    opt.min_tweets, opt.k, &summary);
    files.insert(files.begin(), "corpus_labeled.jsonl");
    out << "report files:\n";
    finish_summary(summary, std::move(files), out_dir, out);
    return kOk;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"tweet sentiment, emotion, and case-count analytics"};
    app.name("tweetsense");
    app.require_subcommand(1);
    Options opt;

    auto add_in = [&](CLI::App* cmd, const char* desc) {
        cmd->add_option("--in", opt.in, desc)->required();
    };
    auto add_out = [&](CLI::App* cmd, const char* desc) {
        cmd->add_option("--out", opt.out, desc)->required();
    };
    auto add_report_format = [&](CLI::App* cmd) {
        cmd->add_option("--format", opt.report_format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    };
    auto add_granularity = [&](CLI::App* cmd) {
        cmd->add_option("--granularity", opt.granularity, "period size")
            ->check(CLI::IsMember({"month", "day"}));
    };

    CLI::App* ingest = app.add_subcommand(
        "ingest", "normalize a raw tweet file into corpus jsonl");
    add_in(ingest, "raw tweets (jsonl or csv)");
    ingest->add_option("--format", opt.format, "input format")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    add_out(ingest, "normalized corpus jsonl");
    ingest->add_flag("--strict", opt.strict, "abort on malformed rows");

    CLI::App* label = app.add_subcommand(
        "label", "attach polarity labels and compound scores");
    add_in(label, "corpus jsonl");
    label->add_option("--lexicon", opt.lexicon, "sentiment lexicon tsv")
        ->required();
    label->add_option("--pos-threshold", opt.pos_threshold,
                      "compound at or above is positive");
    label->add_option("--neg-threshold", opt.neg_threshold,
                      "compound at or below is negative");
    add_out(label, "labeled corpus jsonl");

    CLI::App* resolve = app.add_subcommand(
        "resolve", "resolve profile locations to countries");
    add_in(resolve, "corpus jsonl");
    resolve->add_option("--cities", opt.cities, "gazetteer csv")->required();
    add_out(resolve, "resolved corpus jsonl");

    CLI::App* emotions = app.add_subcommand(
        "emotions", "attach emotion association profiles");
    add_in(emotions, "corpus jsonl");
    emotions
        ->add_option("--emotion-lexicon", opt.emotion_lexicon,
                     "word/affect/flag tsv")
        ->required();
    add_out(emotions, "scored corpus jsonl");

    CLI::App* aggregate = app.add_subcommand(
        "aggregate", "time series of label shares");
    add_in(aggregate, "labeled corpus jsonl");
    add_out(aggregate, "series file");
    add_report_format(aggregate);
    add_granularity(aggregate);
    aggregate->add_option("--kind", opt.kind, "series kind")
        ->check(CLI::IsMember({"sentiment", "emotion"}));
    aggregate->add_option("--country", opt.country,
                          "restrict to one country (default all)");
    aggregate->add_option("--denominator", opt.denominator,
                          "share denominator")
        ->check(CLI::IsMember({"all", "posneg"}));

    CLI::App* cases = app.add_subcommand(
        "cases", "confirmed-case counts over time");
    add_in(cases, "cases csv");
    add_out(cases, "series file");
    add_report_format(cases);
    add_granularity(cases);
    cases->add_option("--country", opt.country,
                      "one country, or ALL for the world");
    cases->add_option("--mode", opt.mode, "cumulative or per-day deltas")
        ->check(CLI::IsMember({"cumulative", "daily-new"}));

    CLI::App* extremes = app.add_subcommand(
        "extremes", "rank countries by a sentiment or emotion metric");
    add_in(extremes, "labeled corpus jsonl");
    add_out(extremes, "ranking file");
    add_report_format(extremes);
    extremes->add_option("--metric", opt.metric, "ranking metric")
        ->check(CLI::IsMember(
            {"pos_share", "neg_share", "fear_score", "trust_score"}));
    extremes->add_option("--k", opt.k, "list length");
    extremes->add_option("--min-tweets", opt.min_tweets,
                         "minimum tweets per country");

    CLI::App* train = app.add_subcommand(
        "train", "train a sentiment classifier on labeled records");
    add_in(train, "labeled corpus jsonl");
    add_out(train, "checkpoint file");
    train->add_option("--model", opt.model, "architecture")
        ->check(CLI::IsMember({"mlp", "lstm"}));
    train->add_option("--epochs", opt.epochs, "training epochs");
    train->add_option("--seed", opt.seed, "rng seed");
    train->add_option("--vocab", opt.vocab, "vocabulary size");
    train->add_option("--hidden", opt.hidden, "mlp hidden width");
    train->add_option("--maxlen", opt.maxlen, "lstm sequence length");
    train->add_option("--embed-dim", opt.embed_dim, "lstm embedding width");
    train->add_option("--units", opt.units, "lstm units");
    train->add_option("--kernel", opt.kernel, "conv kernel width");
    train->add_option("--filters", opt.filters, "conv filters");
    train->add_option("--dropout", opt.dropout, "lstm dropout rate");
    train->add_option("--batch", opt.batch, "mini-batch size");
    train->add_option("--lr", opt.lr, "adam learning rate");
    train->add_option("--train-frac", opt.train_frac, "training split share");
    train->add_option("--history", opt.history, "also write history csv here");

    CLI::App* evaluate = app.add_subcommand(
        "evaluate", "evaluate a checkpoint against labeled records");
    add_in(evaluate, "labeled corpus jsonl");
    evaluate->add_option("--model", opt.model, "checkpoint file")->required();
    evaluate->add_option("--out", opt.out, "also write metrics json here");

    CLI::App* report = app.add_subcommand(
        "report", "write the full report file set for a prepared corpus");
    add_in(report, "labeled/resolved/scored corpus jsonl");
    add_out(report, "output directory");
    report->add_option("--cases", opt.cases, "cases csv to include");
    report->add_option("--k", opt.k, "extremes list length");
    report->add_option("--min-tweets", opt.min_tweets,
                       "extremes minimum tweets per country");

    CLI::App* pipeline = app.add_subcommand(
        "pipeline", "ingest, label, resolve, score, and report in one run");
    add_in(pipeline, "raw tweets (jsonl or csv)");
    pipeline->add_option("--format", opt.format, "input format")
        ->check(CLI::IsMember({"jsonl", "csv"}));
    pipeline->add_option("--lexicon", opt.lexicon, "sentiment lexicon tsv")
        ->required();
    pipeline
        ->add_option("--emotion-lexicon", opt.emotion_lexicon,
                     "word/affect/flag tsv")
        ->required();
    pipeline->add_option("--cities", opt.cities, "gazetteer csv")->required();
    pipeline->add_option("--cases", opt.cases, "cases csv to include");
    add_out(pipeline, "output directory");
    pipeline->add_option("--pos-threshold", opt.pos_threshold,
                         "compound at or above is positive");
    pipeline->add_option("--neg-threshold", opt.neg_threshold,
                         "compound at or below is negative");
    pipeline->add_option("--k", opt.k, "extremes list length");
    pipeline->add_option("--min-tweets", opt.min_tweets,
                         "extremes minimum tweets per country");
    pipeline->add_flag("--strict", opt.strict, "abort on malformed rows");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        const CLI::App* target = &app;
        auto parsed = app.get_subcommands();
        if (!parsed.empty()) target = parsed.front();
        out << target->help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return kUsageError;
    }

    try {
        if (app.got_subcommand(ingest)) return cmd_ingest(opt, out, err);
        if (app.got_subcommand(label)) return cmd_label(opt, out, err);
        if (app.got_subcommand(resolve)) return cmd_resolve(opt, out, err);
        if (app.got_subcommand(emotions)) return cmd_emotions(opt, out, err);
        if (app.got_subcommand(aggregate)) return cmd_aggregate(opt, out, err);
        if (app.got_subcommand(cases)) return cmd_cases(opt, out, err);
        if (app.got_subcommand(extremes)) return cmd_extremes(opt, out, err);
        if (app.got_subcommand(train)) return cmd_train(opt, out, err);
        if (app.got_subcommand(evaluate)) return cmd_evaluate(opt, out, err);
        if (app.got_subcommand(report)) return cmd_report(opt, out, err);
        if (app.got_subcommand(pipeline)) return cmd_pipeline(opt, out, err);
    } catch (const NumericError& e) {
        err << "numeric error: " << e.what() << "\n";
        return kNumericError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    }
    return kUsageError;
}

int run(const std::vector<std::string>& args) {
    return run(args, std::cout, std::cerr);
}

} // namespace tweetsense::cli

#include "cli.hpp"

#include "dnamatch/error.hpp"
#include "dnamatch/freqmodel.hpp"
#include "dnamatch/kinship.hpp"
#include "dnamatch/locusmatch.hpp"
#include "dnamatch/matcher.hpp"
#include "dnamatch/multilocus.hpp"
#include "dnamatch/rarity.hpp"
#include "dnamatch/simdb.hpp"
#include "dnamatch/table_io.hpp"
#include "dnamatch/text_util.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#ifndef DNAMATCH_VERSION
#define DNAMATCH_VERSION "0.0.0"
#endif

namespace dnamatch::cli {

namespace {

using json = nlohmann::json;

enum class Format { tsv, json_lines };

std::string utc_timestamp()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Metadata written ahead of every command's output. Everything except the
// timestamp line depends only on the inputs, so reruns can be diffed.
struct Envelope {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // path, sha256
    std::optional<std::uint64_t> seed;
    std::vector<double> theta;
    std::vector<std::pair<std::string, std::string>> extra;

    void add_input(const std::string& path) { inputs.emplace_back(path, sha256_file(path)); }

    void write(std::ostream& out, Format format) const
    {
        if (format == Format::tsv) {
            out << "# tool=dnamatch " << DNAMATCH_VERSION << '\n';
            out << "# command=" << command << '\n';
            for (const auto& [path, digest] : inputs)
                out << "# input=" << path << " sha256=" << digest << '\n';
            if (seed)
                out << "# seed=" << *seed << '\n';
            if (!theta.empty()) {
                out << "# theta=";
                for (std::size_t i = 0; i < theta.size(); ++i)
                    out << (i ? "," : "") << format_double(theta[i], 17);
                out << '\n';
            }
            for (const auto& [k, v] : extra)
                out << "# " << k << '=' << v << '\n';
            out << "# timestamp=" << utc_timestamp() << '\n';
            return;
        }
        json meta = {{"record", "metadata"},
                     {"tool", "dnamatch"},
                     {"version", DNAMATCH_VERSION},
                     {"command", command}};
        meta["inputs"] = json::array();
        for (const auto& [path, digest] : inputs)
            meta["inputs"].push_back({{"path", path}, {"sha256", digest}});
        meta["seed"] = seed ? json(*seed) : json(nullptr);
        meta["theta"] = theta;
        for (const auto& [k, v] : extra)
            meta[k] = v;
        out << meta.dump() << '\n';
        out << json{{"record", "timestamp"}, {"timestamp", utc_timestamp()}}.dump() << '\n';
    }
};

void emit(std::ostream& out, const json& record)
{
    out << record.dump() << '\n';
}

std::string fmt(double v)
{
    return format_double(v, 6);
}

std::vector<double> parse_theta_list(const std::string& text)
{
    std::vector<double> out;
    for (auto field : split(text, ',')) {
        double v = 0.0;
        if (!parse_double(field, v))
            throw InputError("invalid theta '" + std::string(field) + "'");
        out.push_back(Theta(v).value());
    }
    if (out.empty())
        throw InputError("no theta given");
    return out;
}

double parse_single_theta(const std::string& text)
{
    const auto list = parse_theta_list(text);
    if (list.size() != 1)
        throw InputError("this command takes a single theta");
    return list.front();
}

DeltaCoefficients parse_delta(const std::string& text)
{
    const auto fields = split(text, ',');
    if (fields.size() != 9)
        throw InputError("--delta needs nine comma-separated coefficients");
    std::array<Rational, 9> d;
    for (std::size_t i = 0; i < 9; ++i)
        d[i] = Rational::parse(fields[i]);
    return DeltaCoefficients(d);
}

// n with n (n - 1) / 2 == pairs, if there is one.
std::optional<std::uint64_t> profiles_for_pairs(std::uint64_t pairs)
{
    const auto guess = static_cast<std::uint64_t>(
        std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(pairs))) / 2.0));
    for (std::uint64_t n = guess > 2 ? guess - 2 : 0; n <= guess + 2; ++n)
        if (n >= 2 && pair_count(n) == pairs)
            return n;
    return std::nullopt;
}

// Accepts the matrix TSV written by `scan`, or its JSON-lines output.
MatchHistogram read_histogram_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open histogram file " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') {
        std::istringstream tsv(text);
        return read_histogram_tsv(tsv);
    }

    std::istringstream lines(text);
    std::string line;
    std::optional<MatchHistogram> hist;
    std::vector<json> cells;
    while (std::getline(lines, line)) {
        if (trim(line).empty())
            continue;
        json record;
        try {
            record = json::parse(line);
        } catch (const json::exception& e) {
            throw InputError("histogram " + path + ": " + e.what());
        }
        const auto kind = record.is_object() ? record.value("record", std::string()) : std::string();
        if (kind == "summary") {
            const auto loci = record.value("loci", std::size_t{0});
            if (loci == 0 || loci > kMaxLoci)
                throw InputError("histogram " + path + ": unsupported number of loci");
            hist.emplace(loci);
        } else if (kind == "cell") {
            cells.push_back(std::move(record));
        }
    }
    if (!hist)
        throw InputError("histogram " + path + ": no summary record");
    try {
        for (const auto& c : cells) {
            const auto m = c.at("matching").get<std::size_t>();
            const auto p = c.at("partial").get<std::size_t>();
            if (m + p > hist->loci())
                throw InputError("histogram " + path + ": cell outside the table");
            hist->at(m, p) = c.at("count").get<std::uint64_t>();
        }
    } catch (const json::exception& e) {
        throw InputError("histogram " + path + ": " + e.what());
    }
    return *hist;
}

std::string default_manifest_path(const std::string& out)
{
    const auto slash = out.find_last_of('/');
    const auto dot = out.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
        return out.substr(0, dot) + ".manifest.csv";
    return out + ".manifest.csv";
}

PlantedSpec parse_plant(const std::string& text)
{
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw InputError("--plant expects RELATIONSHIP:COUNT, got '" + text + "'");
    std::uint64_t count = 0;
    if (!parse_uint(std::string_view(text).substr(colon + 1), count))
        throw InputError("--plant: malformed count in '" + text + "'");
    return {parse_relationship(trim(std::string_view(text).substr(0, colon))),
            static_cast<std::size_t>(count)};
}

struct Options {
    std::string format = "tsv";

    std::string freq;
    std::string theta = "0";
    std::vector<std::string> relationships;
    std::string delta;

    std::uint64_t n = 0;
    std::size_t min_matching = 0;
    std::string layout = "matrix";
    bool round = false;

    double p = 0.0;
    double population = 0.0;
    double lambda = 0.0;
    std::string estimator;

    std::uint64_t seed = 0;
    std::size_t subpopulations = 1;
    std::vector<std::string> plants;
    std::string out_path;
    std::string manifest;
    unsigned threads = 1;

    std::string profiles;
    std::string kernel = "auto";

    std::string histogram;
    double threshold = 3.0;
};

// ---------------------------------------------------------------------------

int cmd_match_prob(const Options& o, Format format, std::ostream& out, CLI::App& sub)
{
    const FrequencySet freqs = load_frequency_file(o.freq);
    const auto thetas = parse_theta_list(o.theta);

    struct Column {
        std::string label;
        std::function<double(const LocusModel&, Theta)> prob;
    };
    std::vector<Column> models;
    if (sub.count("--delta")) {
        const DeltaCoefficients d = parse_delta(o.delta);
        models.push_back({"delta", [d](const LocusModel& l, Theta t) {
                              return delta_match_probs(l, t, d).p2;
                          }});
    } else if (!o.relationships.empty()) {
        std::vector<Relationship> rels;
        for (const auto& r : o.relationships) {
            if (r == "all") {
                rels.insert(rels.end(), all_relationships().begin(), all_relationships().end());
                continue;
            }
            rels.push_back(parse_relationship(r));
        }
        for (auto r : rels) {
            const KinshipCoefficients k = named_relationship(r);
            models.push_back({std::string(to_string(r)), [k](const LocusModel& l, Theta t) {
                                  return kin_match_probs(l, t, k).p2;
                              }});
        }
    } else {
        models.push_back({"unrelated", [](const LocusModel& l, Theta t) {
                              return match_class_probs(l, t).p2;
                          }});
    }

    struct Series {
        std::string label;
        std::string model;
        double theta;
        std::vector<double> per_locus;
        double product = 1.0;
    };
    std::vector<Series> series;
    for (const auto& m : models) {
        for (double t : thetas) {
            Series s{m.label, m.label, t, {}, 1.0};
            if (models.size() > 1)
                s.label = m.label + "@" + format_double(t);
            else
                s.label = "theta=" + format_double(t);
            for (const auto& locus : freqs) {
                const double v = m.prob(locus, Theta(t));
                s.per_locus.push_back(v);
                s.product *= v;
            }
            series.push_back(std::move(s));
        }
    }

    Envelope env{"match-prob", {}, std::nullopt, thetas, {}};
    env.add_input(o.freq);
    env.write(out, format);

    if (format == Format::tsv) {
        out << "locus";
        for (const auto& s : series)
            out << '\t' << s.label;
        out << '\n';
        for (std::size_t l = 0; l < freqs.size(); ++l) {
            out << freqs[l].name();
            for (const auto& s : series)
                out << '\t' << fmt(s.per_locus[l]);
            out << '\n';
        }
        out << "product";
        for (const auto& s : series)
            out << '\t' << fmt(s.product);
        out << '\n';
        return kExitOk;
    }
    for (const auto& s : series) {
        for (std::size_t l = 0; l < freqs.size(); ++l)
            emit(out, {{"record", "locus"},
                       {"model", s.model},
                       {"theta", s.theta},
                       {"locus", freqs[l].name()},
                       {"match_prob", s.per_locus[l]}});
        emit(out, {{"record", "product"}, {"model", s.model}, {"theta", s.theta}, {"match_prob", s.product}});
    }
    return kExitOk;
}

int cmd_expect_pairs(const Options& o, Format format, std::ostream& out)
{
    const FrequencySet freqs = load_frequency_file(o.freq);
    const double theta = parse_single_theta(o.theta);
    if (o.min_matching > freqs.size())
        throw InputError("--min-matching exceeds the number of loci");
    if (o.layout != "matrix" && o.layout != "triples")
        throw InputError("--layout must be matrix or triples");

    const auto dist = joint_match_distribution(locus_class_vector(freqs, Theta(theta)));
    const auto table = expected_pair_counts(dist, o.n);

    Envelope env{"expect-pairs", {}, std::nullopt, {theta}, {}};
    env.add_input(o.freq);
    env.extra = {{"n", std::to_string(o.n)},
                 {"pairs", std::to_string(pair_count(o.n))},
                 {"min_matching", std::to_string(o.min_matching)}};
    env.write(out, format);

    if (format == Format::tsv) {
        auto shown = table;
        if (o.round)
            for (auto& c : shown.cells())
                c = std::round(c);
        if (o.layout == "matrix")
            write_matrix_tsv(out, shown, o.min_matching);
        else
            write_triples_tsv(out, shown, o.min_matching);
        return kExitOk;
    }
    for (std::size_t m = o.min_matching; m <= table.loci(); ++m)
        for (std::size_t p = 0; m + p <= table.loci(); ++p)
            emit(out, {{"record", "cell"}, {"matching", m}, {"partial", p}, {"expected", table.at(m, p)}});
    return kExitOk;
}

int cmd_birthday(const Options& o, Format format, std::ostream& out)
{
    const auto r = birthday_at_least_one(o.p, o.n);
    const auto half = sample_size_for_half(o.p);

    Envelope env{"birthday", {}, std::nullopt, {}, {}};
    env.extra = {{"p", format_double(o.p, 17)}, {"n", std::to_string(o.n)}};
    env.write(out, format);

    if (format == Format::tsv) {
        out << "quantity\tvalue\n";
        out << "approx\t" << fmt(r.approx) << '\n';
        out << "exact\t" << (r.exact ? fmt(*r.exact) : std::string("NA")) << '\n';
        out << "n_for_half\t" << half << '\n';
        out << "# caveat: " << kBirthdayCaveat << '\n';
        return kExitOk;
    }
    emit(out, {{"record", "birthday"},
               {"approx", r.approx},
               {"exact", r.exact ? json(*r.exact) : json(nullptr)},
               {"n_for_half", half},
               {"caveat", kBirthdayCaveat}});
    return kExitOk;
}

int cmd_island(const Options& o, Format format, std::ostream& out, CLI::App& sub)
{
    const bool have_lambda = sub.count("--lambda") > 0;
    const bool have_pn = sub.count("--p") > 0 && sub.count("--N") > 0;

    Envelope env{"island", {}, std::nullopt, {}, {{"estimator", o.estimator}}};
    json record = {{"record", "island"}, {"estimator", o.estimator}};
    std::vector<std::pair<std::string, std::string>> rows;

    if (o.estimator == "balding") {
        if (!have_pn)
            throw InputError("balding estimator needs --p and --N");
        const IslandScenario s(o.population, o.p);
        const auto u = balding_uniqueness(s);
        rows = {{"lambda", fmt(s.lambda())},
                {"uniqueness", fmt(u.probability)},
                {"lower_bound", fmt(u.lower_bound)}};
        record["lambda"] = s.lambda();
        record["uniqueness"] = u.probability;
        record["lower_bound"] = u.lower_bound;
    } else if (o.estimator == "kingston") {
        double lambda = 0.0;
        if (have_lambda && !have_pn)
            lambda = o.lambda;
        else if (have_pn && !have_lambda)
            lambda = IslandScenario(o.population, o.p).lambda();
        else
            throw InputError("kingston estimator needs either --lambda or both --p and --N");
        const double post = kingston_posterior(lambda);
        rows = {{"lambda", fmt(lambda)}, {"posterior", fmt(post)}};
        record["lambda"] = lambda;
        record["posterior"] = post;
    } else {
        throw InputError("--estimator must be kingston or balding");
    }

    env.write(out, format);
    if (format == Format::tsv) {
        out << "quantity\tvalue\n";
        for (const auto& [k, v] : rows)
            out << k << '\t' << v << '\n';
    } else {
        emit(out, record);
    }
    return kExitOk;
}

int cmd_simulate(const Options& o, Format format, std::ostream& out)
{
    const FrequencySet base = load_frequency_file(o.freq);
    SimConfig config;
    config.seed = o.seed;
    config.n = o.n;
    config.theta = Theta(parse_single_theta(o.theta));
    config.subpopulations = o.subpopulations;
    for (const auto& p : o.plants)
        config.planted.push_back(parse_plant(p));

    const auto db = generate_database(config, base, o.threads);

    const std::string manifest = o.manifest.empty() ? default_manifest_path(o.out_path) : o.manifest;
    {
        std::ofstream f(o.out_path, std::ios::binary);
        if (!f)
            throw InputError("cannot write " + o.out_path);
        f << "# dnamatch simulate n=" << config.n << " seed=" << config.seed
          << " theta=" << format_double(config.theta.value(), 17)
          << " subpopulations=" << config.subpopulations << '\n';
        write_profile_csv(f, base, db.profiles);
        if (!f)
            throw InputError("write failed on " + o.out_path);
    }
    {
        std::ofstream f(manifest, std::ios::binary);
        if (!f)
            throw InputError("cannot write " + manifest);
        write_manifest_csv(f, config, db.planted);
        if (!f)
            throw InputError("write failed on " + manifest);
    }

    Envelope env{"simulate", {}, config.seed, {config.theta.value()}, {}};
    env.add_input(o.freq);
    env.extra = {{"rng", std::string(Rng::kAlgorithm)}};
    env.write(out, format);

    const std::string profile_digest = sha256_file(o.out_path);
    const std::string manifest_digest = sha256_file(manifest);
    if (format == Format::tsv) {
        out << "quantity\tvalue\n";
        out << "profiles\t" << db.profiles.size() << '\n';
        out << "subpopulations\t" << config.subpopulations << '\n';
        out << "planted_pairs\t" << db.planted.size() << '\n';
        out << "profile_file\t" << o.out_path << '\n';
        out << "profile_sha256\t" << profile_digest << '\n';
        out << "manifest_file\t" << manifest << '\n';
        out << "manifest_sha256\t" << manifest_digest << '\n';
        return kExitOk;
    }
    emit(out, {{"record", "simulate"},
               {"profiles", db.profiles.size()},
               {"subpopulations", config.subpopulations},
               {"planted_pairs", db.planted.size()},
               {"profile_file", o.out_path},
               {"profile_sha256", profile_digest},
               {"manifest_file", manifest},
               {"manifest_sha256", manifest_digest}});
    return kExitOk;
}

int cmd_scan(const Options& o, Format format, std::ostream& out)
{
    const ProfileTable table = load_profile_file(o.profiles);
    ScanOptions options;
    options.threads = std::max(1u, o.threads);
    options.kernel = resolve_kernel(parse_kernel(o.kernel));
    const auto hist = scan_all_pairs(table.profiles, options);

    Envelope env{"scan", {}, std::nullopt, {}, {}};
    env.add_input(o.profiles);
    env.extra = {{"profiles", std::to_string(table.profiles.size())},
                 {"loci", std::to_string(table.locus_names.size())},
                 {"pairs", std::to_string(hist.total())}};
    env.write(out, format);

    if (format == Format::tsv) {
        write_matrix_tsv(out, hist);
        return kExitOk;
    }
    emit(out, {{"record", "summary"},
               {"profiles", table.profiles.size()},
               {"loci", table.locus_names.size()},
               {"pairs", hist.total()}});
    for (std::size_t m = 0; m <= hist.loci(); ++m)
        for (std::size_t p = 0; m + p <= hist.loci(); ++p)
            emit(out, {{"record", "cell"}, {"matching", m}, {"partial", p}, {"count", hist.at(m, p)}});
    return kExitOk;
}

int cmd_compare(const Options& o, Format format, std::ostream& out, CLI::App& sub)
{
    const MatchHistogram hist = read_histogram_file(o.histogram);
    const FrequencySet freqs = load_frequency_file(o.freq);
    const double theta = parse_single_theta(o.theta);
    if (freqs.size() != hist.loci())
        throw InputError("histogram has " + std::to_string(hist.loci()) +
                         " loci but the frequency file has " + std::to_string(freqs.size()));
    if (!(o.threshold > 0.0))
        throw InputError("--threshold must be positive");

    std::uint64_t n = o.n;
    if (sub.count("--n")) {
        if (pair_count(n) != hist.total())
            throw InputError("histogram total does not equal C(n,2) for the given --n");
    } else {
        const auto inferred = profiles_for_pairs(hist.total());
        if (!inferred)
            throw InputError("histogram total is not C(n,2) for any n");
        n = *inferred;
    }

    const auto expected =
        expected_pair_counts(joint_match_distribution(locus_class_vector(freqs, Theta(theta))), n);
    const auto report = compare_observed_expected(hist, expected, o.threshold);
    const double fraction = report.nonzero_expected
                                ? double(report.flagged_nonzero_expected) / double(report.nonzero_expected)
                                : 0.0;

    Envelope env{"compare", {}, std::nullopt, {theta}, {}};
    env.add_input(o.histogram);
    env.add_input(o.freq);
    env.extra = {{"n", std::to_string(n)}, {"threshold_sd", format_double(o.threshold, 17)}};
    env.write(out, format);

    if (format == Format::tsv) {
        out << "matching\tpartial\tobserved\texpected\tdeviation\tpoisson_sd\tflagged\n";
        for (const auto& c : report.cells)
            out << c.matching << '\t' << c.partial << '\t' << fmt(c.observed) << '\t'
                << fmt(c.expected) << '\t' << fmt(c.deviation) << '\t' << fmt(c.poisson_sd)
                << '\t' << (c.flagged ? 1 : 0) << '\n';
        out << "# flagged=" << report.flagged << " cells=" << report.cells.size()
            << " nonzero_expected=" << report.nonzero_expected
            << " flagged_nonzero_expected=" << report.flagged_nonzero_expected
            << " flagged_fraction=" << fmt(fraction) << '\n';
        return kExitOk;
    }
    for (const auto& c : report.cells)
        emit(out, {{"record", "cell"},
                   {"matching", c.matching},
                   {"partial", c.partial},
                   {"observed", c.observed},
                   {"expected", c.expected},
                   {"deviation", c.deviation},
                   {"poisson_sd", c.poisson_sd},
                   {"flagged", c.flagged}});
    emit(out, {{"record", "summary"},
               {"flagged", report.flagged},
               {"cells", report.cells.size()},
               {"nonzero_expected", report.nonzero_expected},
               {"flagged_nonzero_expected", report.flagged_nonzero_expected},
               {"flagged_fraction", fraction}});
    return kExitOk;
}

int cmd_freq_validate(const Options& o, Format format, std::ostream& out)
{
    const FrequencySet freqs = load_frequency_file(o.freq);

    Envelope env{"freq validate", {}, std::nullopt, {}, {{"loci", std::to_string(freqs.size())}}};
    env.add_input(o.freq);
    env.write(out, format);

    if (format == Format::tsv)
        out << "locus\talleles\thomozygosity\theterozygosity\tmatch_prob\n";
    for (const auto& locus : freqs) {
        const auto s = power_sums(locus);
        const double p2 = match_class_probs(locus, Theta(0.0)).p2;
        if (format == Format::tsv)
            out << locus.name() << '\t' << locus.size() << '\t' << fmt(s.s2) << '\t'
                << fmt(1.0 - s.s2) << '\t' << fmt(p2) << '\n';
        else
            emit(out, {{"record", "locus"},
                       {"locus", locus.name()},
                       {"alleles", locus.size()},
                       {"homozygosity", s.s2},
                       {"heterozygosity", 1.0 - s.s2},
                       {"match_prob", p2}});
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"DNA profile match probabilities, database simulation and all-pairs scans",
                 "dnamatch"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("dnamatch ") + DNAMATCH_VERSION);

    Options o;
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "Output format")
            ->check(CLI::IsMember({"tsv", "json-lines"}))
            ->capture_default_str();
    };

    auto* match = app.add_subcommand("match-prob", "Per-locus and product match probabilities");
    match->add_option("--freq", o.freq, "Allele frequency CSV")->required();
    match->add_option("--theta", o.theta, "Comma-separated theta values")->capture_default_str();
    auto* rel_opt = match->add_option("--relationship", o.relationships,
                                      "Relationship(s), comma-separated, or 'all'")
                        ->delimiter(',');
    match->add_option("--delta", o.delta, "Nine IBD coefficients d1..d9, e.g. 1/64,0,...")
        ->excludes(rel_opt);
    add_format(match);

    auto* expect = app.add_subcommand("expect-pairs", "Expected pair counts by (matching, partial) loci");
    expect->add_option("--freq", o.freq, "Allele frequency CSV")->required();
    expect->add_option("--theta", o.theta, "Theta")->capture_default_str();
    expect->add_option("--n", o.n, "Number of profiles")->required()->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 32));
    expect->add_option("--min-matching", o.min_matching, "Smallest matching-loci row to print")
        ->capture_default_str();
    expect->add_option("--layout", o.layout, "matrix or triples")
        ->check(CLI::IsMember({"matrix", "triples"}))
        ->capture_default_str();
    expect->add_flag("--round", o.round, "Print counts rounded to integers (TSV only)");
    add_format(expect);

    auto* birthday = app.add_subcommand("birthday", "Chance that some profile occurs twice");
    birthday->add_option("--p", o.p, "Profile probability")->required();
    birthday->add_option("--n", o.n, "Number of profiles")->required();
    add_format(birthday);

    auto* island = app.add_subcommand("island", "Uniqueness of a matching profile in a population");
    island->add_option("--estimator", o.estimator, "kingston or balding")
        ->required()
        ->check(CLI::IsMember({"kingston", "balding"}));
    island->add_option("--p", o.p, "Profile probability");
    island->add_option("--N", o.population, "Population size");
    island->add_option("--lambda", o.lambda, "Expected number of carriers (kingston)");
    add_format(island);

    auto* simulate = app.add_subcommand("simulate", "Simulate a profile database");
    simulate->add_option("--freq", o.freq, "Allele frequency CSV")->required();
    simulate->add_option("--n", o.n, "Number of profiles")->required();
    simulate->add_option("--seed", o.seed, "Random seed")->required();
    simulate->add_option("--theta", o.theta, "Theta between subpopulations")->capture_default_str();
    simulate->add_option("--subpopulations", o.subpopulations, "Number of subpopulations")
        ->capture_default_str();
    simulate->add_option("--plant", o.plants, "Planted relatives, RELATIONSHIP:COUNT (repeatable)");
    simulate->add_option("--out", o.out_path, "Profile CSV to write")->required();
    simulate->add_option("--manifest", o.manifest, "Manifest CSV (default: <out>.manifest.csv)");
    simulate->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
    add_format(simulate);

    auto* scan = app.add_subcommand("scan", "Histogram of all profile pairs");
    scan->add_option("--profiles", o.profiles, "Profile CSV")->required();
    scan->add_option("--threads", o.threads, "Worker threads")->capture_default_str();
    scan->add_option("--kernel", o.kernel, "auto, scalar, avx2 or neon")->capture_default_str();
    add_format(scan);

    auto* compare = app.add_subcommand("compare", "Observed histogram against expected counts");
    compare->add_option("--histogram", o.histogram, "Histogram from scan (TSV or JSON lines)")->required();
    compare->add_option("--freq", o.freq, "Allele frequency CSV")->required();
    compare->add_option("--theta", o.theta, "Theta")->capture_default_str();
    compare->add_option("--n", o.n, "Number of profiles (default: inferred from the histogram)");
    compare->add_option("--threshold", o.threshold, "Flag cells beyond this many sqrt(expected)")
        ->capture_default_str();
    add_format(compare);

    auto* freq = app.add_subcommand("freq", "Frequency file utilities");
    freq->require_subcommand(1);
    auto* validate = freq->add_subcommand("validate", "Check a frequency file and summarise loci");
    validate->add_option("--freq", o.freq, "Allele frequency CSV")->required();
    add_format(validate);

    std::vector<std::string> argv_storage;
    argv_storage.reserve(args.size() + 1);
    argv_storage.emplace_back("dnamatch");
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage)
        argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInput;
    }

    const Format format = o.format == "json-lines" ? Format::json_lines : Format::tsv;
    try {
        if (*match)
            return cmd_match_prob(o, format, out, *match);
        if (*expect)
            return cmd_expect_pairs(o, format, out);
        if (*birthday)
            return cmd_birthday(o, format, out);
        if (*island)
            return cmd_island(o, format, out, *island);
        if (*simulate)
            return cmd_simulate(o, format, out);
        if (*scan)
            return cmd_scan(o, format, out);
        if (*compare)
            return cmd_compare(o, format, out, *compare);
        if (*validate)
            return cmd_freq_validate(o, format, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvariantError& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kExitInternal;
    }
    err << "internal error: no command ran\n";
    return kExitInternal;
}

} // namespace dnamatch::cli

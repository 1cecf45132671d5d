#include <catch2/catch_amalgamated.hpp>

#include <facmatch/catalog.hpp>
#include <facmatch/criteria.hpp>
#include <facmatch/geo.hpp>
#include <facmatch/outputs.hpp>
#include <facmatch/record_io.hpp>
#include <facmatch/scoring.hpp>
#include <facmatch/similarity.hpp>
#include <facmatch/strategy.hpp>
#include <facmatch/synonym_sets.hpp>
#include <facmatch/util.hpp>

#include <numeric>

#include "support/builders.hpp"
#include "support/oracles.hpp"

using namespace facmatch;

namespace {

const std::vector<std::string> kCriteria = {"label_match", "identifier", "distance",
                                            "type",        "date",       "aperture"};

/// Plain array-based disjoint sets used as the reference partition.
struct DsuOracle {
    std::vector<size_t> parent;
    explicit DsuOracle(size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    size_t find(size_t i) { return parent[i] == i ? i : parent[i] = find(parent[i]); }
    void merge(size_t a, size_t b) { parent[find(a)] = find(b); }
    bool same(size_t a, size_t b) { return find(a) == find(b); }
};

}  // namespace

TEST_CASE("criteria are symmetric in their arguments") {
    oracles::Rng rng(414213);
    for (int i = 0; i < 600; ++i) {
        Entity a = builders::random_entity(rng, "s1", i * 2);
        Entity b = builders::random_entity(rng, "s2", i * 2 + 1);
        // Shared material sometimes, so Accept/Reject branches get exercised.
        if (rng.chance(0.3)) b.alt_labels.insert(a.pref_label);
        if (rng.chance(0.3)) b.external_ids = a.external_ids;
        if (rng.chance(0.3)) {
            b.latitude = a.latitude;
            b.longitude = a.longitude;
        }
        for (const auto& name : kCriteria) {
            CAPTURE(i, name);
            CHECK(evaluate_criterion(name, a, b) == evaluate_criterion(name, b, a));
        }
    }
}

TEST_CASE("reject criteria fall back to neutral when a side lacks the data") {
    oracles::Rng rng(271828);
    for (int i = 0; i < 600; ++i) {
        Entity a = builders::random_entity(rng, "s1", i * 2);
        Entity b = builders::random_entity(rng, "s2", i * 2 + 1);
        Entity& cleared = rng.chance(0.5) ? a : b;
        int which = rng.integer(0, 4);
        const char* name = nullptr;
        switch (which) {
            case 0:
                name = "identifier";
                cleared.external_ids.clear();
                break;
            case 1:
                name = "distance";
                cleared.latitude.reset();
                cleared.longitude.reset();
                break;
            case 2:
                name = "date";
                cleared.launch_year.reset();
                cleared.start_year.reset();
                cleared.end_year.reset();
                break;
            case 3:
                name = "aperture";
                cleared.aperture_m.reset();
                break;
            default:
                name = "type";
                cleared.facility_class = FacilityClass::Unknown;
                break;
        }
        CAPTURE(i, name);
        CHECK(evaluate_criterion(name, a, b) == Decision::Neutral);
    }
}

TEST_CASE("less data never turns a kept pair into a rejected one") {
    oracles::Rng rng(173205);
    for (int i = 0; i < 600; ++i) {
        Entity a = builders::random_entity(rng, "s1", i * 2);
        Entity b = builders::random_entity(rng, "s2", i * 2 + 1);
        Entity thinned_a = a;
        Entity thinned_b = b;
        // Drop a random subset of matchable fields from both sides.
        auto thin = [&rng](Entity& e) {
            if (rng.chance(0.5)) e.external_ids.clear();
            if (rng.chance(0.5)) {
                e.latitude.reset();
                e.longitude.reset();
            }
            if (rng.chance(0.5)) {
                e.launch_year.reset();
                e.start_year.reset();
                e.end_year.reset();
            }
            if (rng.chance(0.5)) e.aperture_m.reset();
            if (rng.chance(0.5)) e.facility_class = FacilityClass::Unknown;
        };
        thin(thinned_a);
        thin(thinned_b);
        for (const auto& name : {"identifier", "distance", "date", "aperture", "type"}) {
            CAPTURE(i, name);
            Decision before = evaluate_criterion(name, a, b);
            Decision after = evaluate_criterion(name, thinned_a, thinned_b);
            if (before == Decision::Neutral) CHECK(after == Decision::Neutral);
            // Reject may relax to Neutral, never the other way round.
            CHECK(after != Decision::Accept);
        }
    }
}

TEST_CASE("synonym registry matches a reference disjoint-set forest") {
    oracles::Rng rng(161803);
    for (int round = 0; round < 500; ++round) {
        int n = rng.integer(2, 16);
        Catalog catalog;
        std::vector<std::string> quris;
        for (int i = 0; i < n; ++i) {
            Entity e = builders::entity("s" + std::to_string(rng.integer(0, 2)),
                                        "u" + std::to_string(round) + "-" + std::to_string(i),
                                        "Entity " + std::to_string(i));
            if (catalog.find(e.qualified())) continue;
            catalog.add(e);
            quris.push_back(e.qualified());
        }
        n = static_cast<int>(quris.size());

        SynonymSetRegistry sets(catalog);
        DsuOracle oracle(quris.size());
        int merges = rng.integer(0, 2 * n);
        std::vector<std::pair<int, int>> ops;
        for (int m = 0; m < merges; ++m) {
            int a = rng.integer(0, n - 1), b = rng.integer(0, n - 1);
            ops.emplace_back(a, b);
            bool changed = sets.merge(quris[a], quris[b]);
            CHECK(changed == !oracle.same(a, b));
            oracle.merge(a, b);
        }

        // Pairwise agreement with the oracle partition covers reflexivity,
        // symmetry and transitivity in one sweep.
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                CAPTURE(round, a, b);
                CHECK(sets.same_set(quris[a], quris[b]) == oracle.same(a, b));
            }

        // The root is the smallest member, and all_sets() is a partition.
        auto all = sets.all_sets();
        size_t covered = 0;
        for (const auto& [root, members] : all) {
            REQUIRE_FALSE(members.empty());
            CHECK(root == members.front());
            CHECK(std::is_sorted(members.begin(), members.end()));
            for (const auto& q : members) CHECK(sets.find(q) == root);
            covered += members.size();
        }
        CHECK(covered == quris.size());

        // Replaying the same merges in another order yields the same partition.
        SynonymSetRegistry replay(catalog);
        rng.shuffle(ops);
        for (const auto& [a, b] : ops) replay.merge(quris[a], quris[b]);
        CHECK(replay.all_sets() == all);

        // Merging again never changes anything.
        for (const auto& [a, b] : ops) CHECK_FALSE(sets.merge(quris[a], quris[b]));
        CHECK(sets.all_sets() == all);
    }
}

TEST_CASE("preferred label election ignores member order") {
    oracles::Rng rng(618033);
    const std::vector<std::string> sources = {"aas", "pds", "wikidata", "nssdc"};
    for (int round = 0; round < 500; ++round) {
        Catalog catalog;
        std::vector<std::string> members;
        int n = rng.integer(1, 8);
        for (int i = 0; i < n; ++i) {
            Entity e = builders::entity(sources[rng.integer(0, 3)],
                                        "u" + std::to_string(round) + "-" + std::to_string(i),
                                        rng.label());
            if (catalog.find(e.qualified())) continue;
            catalog.add(e);
            members.push_back(e.qualified());
        }
        std::vector<std::string> priority_order = sources;
        rng.shuffle(priority_order);
        SourcePriority priority(priority_order);

        ElectedLabel first = elect_pref_label(members, catalog, priority);
        for (int shuffles = 0; shuffles < 3; ++shuffles) {
            rng.shuffle(members);
            ElectedLabel again = elect_pref_label(members, catalog, priority);
            CAPTURE(round, shuffles);
            CHECK(again.label == first.label);
            CHECK(again.source == first.source);
            CHECK(again.member_quri == first.member_quri);
        }

        // The winner really is minimal under (rank, length, label, source, uri).
        for (const auto& quri : members) {
            const Entity* e = catalog.find(quri);
            auto key = std::make_tuple(priority.rank(e->source), e->pref_label.size(),
                                       e->pref_label, e->source, e->qualified());
            const Entity* w = catalog.find(first.member_quri);
            auto winner = std::make_tuple(priority.rank(w->source), w->pref_label.size(),
                                          w->pref_label, w->source, w->qualified());
            CHECK(winner <= key);
        }
    }
}

TEST_CASE("canonical records are serialization fixed points") {
    oracles::Rng rng(141421);
    for (int i = 0; i < 500; ++i) {
        Entity e = builders::random_entity(rng, "src", i);
        e.alt_labels.erase(e.pref_label);  // parsing dedupes; start canonical
        if (rng.chance(0.3)) e.extras["survey"] = rng.word(3, 8);
        if (rng.chance(0.2)) e.deprecated = true;
        if (rng.chance(0.3)) e.modified = "2025-07-01T08:30:00";

        std::string once = record_line(e);
        Entity back = record_io::parse_record(nlohmann::json::parse(once));
        CAPTURE(i, once);
        CHECK(back == e);
        CHECK(record_line(back) == once);
    }
}

TEST_CASE("strategy rendering is idempotent") {
    oracles::Rng rng(223606);
    const std::vector<std::string> steps = {"label_match", "identifier", "distance", "type",
                                            "date",        "aperture",   "levenshtein", "tfidf",
                                            "digit",       "acronym"};
    const std::vector<std::string> classes = {"telescope", "observatory", "spacecraft",
                                              "investigation"};
    for (int i = 0; i < 500; ++i) {
        std::string text;
        int lines = rng.integer(1, 4);
        for (int l = 0; l < lines; ++l) {
            std::string a = rng.word(2, 6), b = rng.word(2, 6);
            text += a + " ,  " + b;
            if (rng.chance(0.4)) text += "[ " + classes[rng.integer(0, 3)] + " ]";
            text += " :  ";
            int n = rng.integer(1, 4);
            for (int s = 0; s < n; ++s) {
                if (s) text += " ,";
                text += " " + steps[rng.integer(0, static_cast<int>(steps.size()) - 1)];
            }
            text += "\n";
        }
        CAPTURE(i, text);
        std::string once = render_strategy(parse_strategy(text));
        std::string twice = render_strategy(parse_strategy(once));
        CHECK(twice == once);
    }
}

TEST_CASE("timestamps round-trip through format and parse") {
    oracles::Rng rng(244948);
    for (int i = 0; i < 500; ++i) {
        MicroTime t{static_cast<std::time_t>(rng.integer(0, 2000000000)),
                    rng.integer(0, 999999)};
        std::string iso = format_iso_micros(t);
        auto back = parse_iso_micros(iso);
        CAPTURE(i, iso);
        REQUIRE(back.has_value());
        CHECK(back->seconds == t.seconds);
        CHECK(back->micros == t.micros);
        CHECK(format_iso_micros(*back) == iso);
    }
}

TEST_CASE("format_double output parses back to the same bits") {
    oracles::Rng rng(264575);
    for (int i = 0; i < 500; ++i) {
        double v = rng.chance(0.3) ? static_cast<double>(rng.integer(-100000, 100000))
                                   : rng.real(-1e6, 1e6);
        std::string s = format_double(v);
        auto back = parse_double(s);
        CAPTURE(i, s);
        REQUIRE(back.has_value());
        CHECK(*back == v);
    }
}

TEST_CASE("global score is scale-invariant and bounded") {
    oracles::Rng rng(282842);
    const std::vector<std::string> names = {"levenshtein", "tfidf", "digit", "acronym",
                                            "sentence_transformer"};
    for (int i = 0; i < 500; ++i) {
        std::map<std::string, double> scores;
        int n = rng.integer(1, static_cast<int>(names.size()));
        for (int s = 0; s < n; ++s) scores[names[rng.integer(0, 4)]] = rng.real(0.0, 1.0);

        ScoreWeights weights;
        for (const auto& name : names) weights.weights[name] = rng.real(0.1, 5.0);

        auto base = global_score(scores, weights);
        REQUIRE(base.has_value());

        double lo = 1.0, hi = 0.0;
        for (const auto& [_, v] : scores) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(*base >= lo - 1e-12);
        CHECK(*base <= hi + 1e-12);

        for (double lambda : {0.5, 2.0, 7.25}) {
            ScoreWeights scaled;
            for (const auto& [k, w] : weights.weights) scaled.weights[k] = w * lambda;
            auto v = global_score(scores, scaled);
            REQUIRE(v.has_value());
            CHECK(*v == Catch::Approx(*base).margin(1e-12));
        }

        // Zeroing one weight equals removing that score.
        std::string victim = scores.begin()->first;
        ScoreWeights zeroed = weights;
        zeroed.weights[victim] = 0.0;
        std::map<std::string, double> without = scores;
        without.erase(victim);
        auto a = global_score(scores, zeroed);
        auto b = global_score(without, weights);
        CHECK(a.has_value() == b.has_value());
        if (a && b) CHECK(*a == Catch::Approx(*b).margin(1e-12));
    }
}

TEST_CASE("levenshtein similarity properties") {
    oracles::Rng rng(316227);
    for (int i = 0; i < 500; ++i) {
        std::string a = rng.label(), b = rng.label();
        double ab = levenshtein_similarity(a, b);
        CAPTURE(i, a, b);
        CHECK(ab == levenshtein_similarity(b, a));
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(levenshtein_similarity(a, a) == 1.0);
        CHECK(levenshtein_similarity(a, to_lower(a)) == 1.0);
        CHECK(ab == Catch::Approx(oracles::levenshtein_similarity(a, b)).margin(1e-12));
    }
}

TEST_CASE("geodesic distance properties") {
    oracles::Rng rng(331662);
    for (int i = 0; i < 500; ++i) {
        double lat1 = rng.latitude(), lon1 = rng.longitude();
        double lat2 = rng.latitude(), lon2 = rng.longitude();
        double d = geodesic_km(lat1, lon1, lat2, lon2);
        CAPTURE(i, lat1, lon1, lat2, lon2);
        CHECK(d >= 0.0);
        CHECK(d <= kEarthRadiusKm * 3.14159265358979324 + 1e-6);
        CHECK(d == Catch::Approx(geodesic_km(lat2, lon2, lat1, lon1)).margin(1e-9));
        CHECK(geodesic_km(lat1, lon1, lat1, lon1) == Catch::Approx(0.0).margin(1e-9));
        CHECK(d == Catch::Approx(oracles::haversine_km(lat1, lon1, lat2, lon2)).margin(1e-6));
    }
}

TEST_CASE("natural ordering is a strict weak order") {
    oracles::Rng rng(346410);
    auto digit_string = [&rng]() {
        std::string out;
        int parts = rng.integer(1, 3);
        for (int p = 0; p < parts; ++p) {
            if (rng.chance(0.5)) out += rng.word(1, 3);
            if (rng.chance(0.3)) out += "00";  // leading zeros on purpose
            out += std::to_string(rng.integer(0, 999));
        }
        return out;
    };
    for (int i = 0; i < 500; ++i) {
        std::string a = digit_string(), b = digit_string(), c = digit_string();
        CAPTURE(i, a, b, c);
        CHECK_FALSE(natural_less(a, a));
        if (natural_less(a, b)) CHECK_FALSE(natural_less(b, a));
        if (natural_less(a, b) && natural_less(b, c)) CHECK(natural_less(a, c));
        // Incomparable strings are identical: the order is total on values.
        if (!natural_less(a, b) && !natural_less(b, a)) CHECK(a == b);
    }
}

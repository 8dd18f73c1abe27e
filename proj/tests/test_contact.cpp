#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "hoikit/contact.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace hoikit;
using namespace hoikit::testing;

namespace {

// Body stand-in: one vertex per part at a controllable distance from the
// origin-centered object.
struct PartScene {
    TriMesh body;
    std::vector<PartName> labels;
    TriMesh object;
};

PartScene make_part_scene(const std::array<double, kPartCount>& distances) {
    PartScene scene;
    scene.object.vertices = {{0, 0, 0}};
    for (int i = 0; i < kPartCount; ++i) {
        scene.body.vertices.push_back({distances[static_cast<size_t>(i)], 0, 0});
        scene.labels.push_back(static_cast<PartName>(i));
    }
    return scene;
}

std::array<double, kPartCount> uniform_distances(double d) {
    std::array<double, kPartCount> distances;
    distances.fill(d);
    return distances;
}

}  // namespace

TEST_CASE("coincident vertex gives a zero part distance") {
    auto distances = uniform_distances(1.0);
    distances[static_cast<size_t>(PartName::right_hand)] = 0.0;
    const PartScene scene = make_part_scene(distances);
    const auto got = part_min_distances(scene.body, scene.labels, scene.object);
    CHECK(got[static_cast<size_t>(PartName::right_hand)] == 0.0);
    for (int i = 0; i < kPartCount; ++i)
        if (static_cast<PartName>(i) != PartName::right_hand)
            CHECK(got[static_cast<size_t>(i)] >= 1.0);
}

TEST_CASE("distant object leaves all parts at a meter or more") {
    const SkinnedBody body = make_test_body();
    const TriMesh surface = body_mesh(body);
    const TriMesh far_ball = make_uv_sphere({5, 1, 0}, 0.1, 4, 6);
    const auto distances = part_min_distances(surface, body.part_labels, far_ball);
    for (double d : distances) CHECK(d >= 1.0);
}

TEST_CASE("part distances match the all-pairs oracle on a hand-sphere scene") {
    const SkinnedBody body = make_test_body();
    const TriMesh surface = body_mesh(body);
    const TriMesh ball = make_uv_sphere(body.joints[6] + Vec3{0.12, 0, 0}, 0.06, 5, 8);

    const auto got = part_min_distances(surface, body.part_labels, ball);
    std::array<double, kPartCount> expected;
    expected.fill(std::numeric_limits<double>::infinity());
    for (size_t v = 0; v < surface.vertices.size(); ++v) {
        double best = std::numeric_limits<double>::infinity();
        for (const Vec3& o : ball.vertices) best = std::min(best, distance(surface.vertices[v], o));
        auto& slot = expected[static_cast<size_t>(body.part_labels[v])];
        slot = std::min(slot, best);
    }
    for (int i = 0; i < kPartCount; ++i)
        CHECK(got[static_cast<size_t>(i)] ==
              doctest::Approx(expected[static_cast<size_t>(i)]).epsilon(1e-12));
}

TEST_CASE("the 4cm rule is strict") {
    auto distances = uniform_distances(1.0);
    distances[static_cast<size_t>(PartName::right_hand)] = 0.039;
    CHECK(contacting_parts(distances) == std::vector<PartName>{PartName::right_hand});

    distances[static_cast<size_t>(PartName::right_hand)] = 0.040;
    CHECK(contacting_parts(distances).empty());

    distances[static_cast<size_t>(PartName::right_hand)] = 0.041;
    CHECK(contacting_parts(distances).empty());
}

TEST_CASE("contacting parts equal a direct comprehension on random distances") {
    Rng rng(141);
    for (int trial = 0; trial < 20; ++trial) {
        std::array<double, kPartCount> distances;
        for (auto& d : distances) d = rng.uniform(0.0, 0.08);
        const auto got = contacting_parts(distances);
        std::vector<PartName> expected;
        for (int i = 0; i < kPartCount; ++i)
            if (distances[static_cast<size_t>(i)] < 0.04)
                expected.push_back(static_cast<PartName>(i));
        CHECK(got == expected);
    }
}

TEST_CASE("growing the threshold never removes a contact") {
    Rng rng(143);
    std::array<double, kPartCount> distances;
    for (auto& d : distances) d = rng.uniform(0.0, 0.1);
    const auto small = contacting_parts(distances, 0.03);
    const auto large = contacting_parts(distances, 0.06);
    for (PartName part : small) CHECK(std::count(large.begin(), large.end(), part) == 1);
}

TEST_CASE("named configurations match their defining part sets") {
    using P = PartName;
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{})) == Configuration::no_contact);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::right_hand})) ==
          Configuration::right_hand);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::right_hand, P::right_forearm})) ==
          Configuration::right_hand);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::left_hand, P::left_forearm})) ==
          Configuration::left_hand);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::left_hand, P::right_hand})) ==
          Configuration::both_hands);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::right_upper_leg, P::right_foot})) ==
          Configuration::right_leg);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::left_lower_leg})) ==
          Configuration::left_leg);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::back})) == Configuration::on_back);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::back, P::right_hand})) ==
          Configuration::other);
    CHECK(classify_configuration(parts_to_mask(std::vector<P>{P::head})) == Configuration::other);
}

TEST_CASE("every one of the 32768 part subsets gets exactly one label") {
    const PartMask right_hand_set =
        part_bit(PartName::right_hand) | part_bit(PartName::right_forearm);
    const PartMask left_hand_set =
        part_bit(PartName::left_hand) | part_bit(PartName::left_forearm);
    const PartMask right_leg_set = part_bit(PartName::right_upper_leg) |
                                   part_bit(PartName::right_lower_leg) |
                                   part_bit(PartName::right_foot);
    const PartMask left_leg_set = part_bit(PartName::left_upper_leg) |
                                  part_bit(PartName::left_lower_leg) |
                                  part_bit(PartName::left_foot);

    std::array<size_t, kConfigurationCount> histogram{};
    for (PartMask mask = 0; mask < (1u << kPartCount); ++mask) {
        // Independent statement of the eight defining predicates.
        const bool no_contact = mask == 0;
        const bool right_hand = mask != 0 && (mask & ~right_hand_set) == 0;
        const bool left_hand = mask != 0 && (mask & ~left_hand_set) == 0;
        const bool both_hands = (mask & ~(right_hand_set | left_hand_set)) == 0 &&
                                (mask & right_hand_set) != 0 && (mask & left_hand_set) != 0;
        const bool right_leg = mask != 0 && (mask & ~right_leg_set) == 0;
        const bool left_leg = mask != 0 && (mask & ~left_leg_set) == 0;
        const bool on_back = mask == part_bit(PartName::back);
        const int fired = static_cast<int>(no_contact) + static_cast<int>(right_hand) +
                          static_cast<int>(left_hand) + static_cast<int>(both_hands) +
                          static_cast<int>(right_leg) + static_cast<int>(left_leg) +
                          static_cast<int>(on_back);
        REQUIRE(fired <= 1);  // the named rules are mutually exclusive

        const Configuration got = classify_configuration(mask);
        ++histogram[static_cast<size_t>(got)];
        if (no_contact) CHECK(got == Configuration::no_contact);
        else if (right_hand) CHECK(got == Configuration::right_hand);
        else if (left_hand) CHECK(got == Configuration::left_hand);
        else if (both_hands) CHECK(got == Configuration::both_hands);
        else if (right_leg) CHECK(got == Configuration::right_leg);
        else if (left_leg) CHECK(got == Configuration::left_leg);
        else if (on_back) CHECK(got == Configuration::on_back);
        else CHECK(got == Configuration::other);
    }
    for (size_t count : histogram) CHECK(count > 0);
}

TEST_CASE("contact accuracy counts fully satisfied prompts") {
    // 60 prompts, 54 of them satisfied: 0.90.
    std::vector<ContactReport> reports;
    std::vector<ContactSpec> specs;
    for (int i = 0; i < 60; ++i) {
        ContactReport report;
        report.part_distance = uniform_distances(1.0);
        ContactSpec spec;
        spec.category = "box";
        spec.parts = {PartName::right_hand};
        if (i < 54) {
            report.part_distance[static_cast<size_t>(PartName::right_hand)] = 0.01;
            report.contacting = {PartName::right_hand};
            report.configuration = Configuration::right_hand;
        } else {
            report.configuration = Configuration::no_contact;
        }
        reports.push_back(report);
        specs.push_back(spec);
    }
    CHECK(contact_accuracy(reports, specs) == doctest::Approx(0.90));

    // All correct.
    std::vector<ContactReport> good(reports.begin(), reports.begin() + 54);
    std::vector<ContactSpec> good_specs(specs.begin(), specs.begin() + 54);
    CHECK(contact_accuracy(good, good_specs) == doctest::Approx(1.0));
}

TEST_CASE("contact accuracy on constructed geometric scenes") {
    const SkinnedBody body = make_test_body();
    const TriMesh surface = body_mesh(body);
    std::vector<ContactReport> reports;
    std::vector<ContactSpec> specs;

    // Two scenes satisfy their spec by construction, one does not.
    const TriMesh right_ball = make_uv_sphere(body.joints[9] - Vec3{0.06, 0, 0}, 0.05, 4, 6);
    const TriMesh left_ball = make_uv_sphere(body.joints[6] + Vec3{0.06, 0, 0}, 0.05, 4, 6);
    const TriMesh far_ball = make_uv_sphere({4, 0, 0}, 0.05, 4, 6);

    reports.push_back(make_contact_report(surface, body.part_labels, right_ball));
    specs.push_back({"ball", {PartName::right_hand}});
    reports.push_back(make_contact_report(surface, body.part_labels, left_ball));
    specs.push_back({"ball", {PartName::left_hand}});
    reports.push_back(make_contact_report(surface, body.part_labels, far_ball));
    specs.push_back({"ball", {PartName::right_hand}});

    CHECK(contact_accuracy(reports, specs) == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
}

TEST_CASE("contact accuracy is invariant under joint permutation") {
    Rng rng(151);
    std::vector<ContactReport> reports(12);
    std::vector<ContactSpec> specs(12);
    for (int i = 0; i < 12; ++i) {
        reports[static_cast<size_t>(i)].part_distance = uniform_distances(1.0);
        for (int p = 0; p < 3; ++p) {
            const auto part = static_cast<PartName>(rng.uniform_int(0, kPartCount - 1));
            if (rng.uniform(0, 1) < 0.5)
                reports[static_cast<size_t>(i)]
                    .part_distance[static_cast<size_t>(part)] = 0.01;
        }
        reports[static_cast<size_t>(i)].contacting =
            contacting_parts(reports[static_cast<size_t>(i)].part_distance);
        reports[static_cast<size_t>(i)].configuration =
            classify_configuration(reports[static_cast<size_t>(i)].contacting);
        specs[static_cast<size_t>(i)].category = "thing";
        specs[static_cast<size_t>(i)].parts = {
            static_cast<PartName>(rng.uniform_int(0, kPartCount - 1))};
    }
    const double base = contact_accuracy(reports, specs);

    std::vector<size_t> order(12);
    for (size_t i = 0; i < 12; ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng.engine);
    std::vector<ContactReport> shuffled_reports;
    std::vector<ContactSpec> shuffled_specs;
    for (size_t i : order) {
        shuffled_reports.push_back(reports[i]);
        shuffled_specs.push_back(specs[i]);
    }
    CHECK(contact_accuracy(shuffled_reports, shuffled_specs) == doctest::Approx(base));
}

TEST_CASE("accuracy rejects mismatched or empty inputs") {
    std::vector<ContactReport> reports(2);
    std::vector<ContactSpec> specs(3);
    CHECK_THROWS_AS(contact_accuracy(reports, specs), InvalidArgument);
    CHECK_THROWS_AS(contact_accuracy({}, {}), InvalidArgument);
}

TEST_CASE("candidate selection prefers the first satisfier") {
    ContactSpec spec{"ball", {PartName::right_hand}};
    ContactReport violates;
    violates.part_distance = uniform_distances(1.0);
    violates.configuration = Configuration::no_contact;
    ContactReport satisfies = violates;
    satisfies.part_distance[static_cast<size_t>(PartName::right_hand)] = 0.02;
    satisfies.contacting = {PartName::right_hand};
    satisfies.configuration = Configuration::right_hand;

    const std::vector<ContactReport> reports{violates, satisfies, satisfies};
    CHECK(select_best_candidate(reports, spec) == 1);
}

TEST_CASE("with no satisfier the best partial hit count wins, ties low") {
    ContactSpec spec{"board", {PartName::right_hand, PartName::left_hand, PartName::head}};
    auto report_with = [](std::initializer_list<PartName> parts) {
        ContactReport report;
        report.part_distance = uniform_distances(1.0);
        for (PartName p : parts) report.part_distance[static_cast<size_t>(p)] = 0.01;
        report.contacting = contacting_parts(report.part_distance);
        report.configuration = classify_configuration(report.contacting);
        return report;
    };
    const std::vector<ContactReport> reports{
        report_with({PartName::right_hand}),
        report_with({PartName::right_hand, PartName::left_hand}),
        report_with({PartName::left_hand, PartName::head}),
    };
    CHECK(select_best_candidate(reports, spec) == 1);
}

TEST_CASE("selection over meshes mirrors the report-level rule") {
    const SkinnedBody body = make_test_body();
    const TriMesh surface = body_mesh(body);
    ContactSpec spec{"ball", {PartName::left_hand}};

    std::vector<Candidate> candidates;
    Candidate far{make_uv_sphere({3, 0, 0}, 0.05, 4, 6), surface, body.part_labels};
    Candidate touching{make_uv_sphere(body.joints[6] + Vec3{0.05, 0, 0}, 0.05, 4, 6), surface,
                       body.part_labels};
    candidates.push_back(far);
    candidates.push_back(touching);
    CHECK(select_best_candidate(candidates, spec) == 1);

    CHECK_THROWS_AS(select_best_candidate(std::vector<ContactReport>{}, spec), InvalidArgument);
}

TEST_CASE("caption record is canonical in part order and round trips") {
    const std::vector<PartName> forward{PartName::right_hand, PartName::left_foot};
    const std::vector<PartName> backward{PartName::left_foot, PartName::right_hand};
    const std::string a =
        compose_caption_fields("a tall person", "a red backpack", "backpack", "carrying", forward);
    const std::string b =
        compose_caption_fields("a tall person", "a red backpack", "backpack", "carrying", backward);
    CHECK(a == b);
    CHECK(a.find("\"parts\":[\"left_foot\",\"right_hand\"]") != std::string::npos);

    // Byte-identical after a JSON parse/serialize cycle.
    CHECK(nlohmann::json::parse(a).dump() == a);

    CHECK_THROWS_AS(compose_caption_fields("h", "o", "", "carrying", forward), InvalidArgument);
    CHECK_THROWS_AS(compose_caption_fields("h", "o", "backpack", "", forward), InvalidArgument);
}

TEST_CASE("contact report JSON round trip") {
    const SkinnedBody body = make_test_body();
    const TriMesh ball = make_uv_sphere(body.joints[9] - Vec3{0.05, 0, 0}, 0.05, 4, 6);
    const ContactReport report = make_contact_report(body_mesh(body), body.part_labels, ball);
    const ContactReport back = contact_report_from_json(contact_report_to_json(report));
    CHECK(back.configuration == report.configuration);
    CHECK(back.contacting == report.contacting);
    for (int i = 0; i < kPartCount; ++i) {
        const double a = report.part_distance[static_cast<size_t>(i)];
        const double b = back.part_distance[static_cast<size_t>(i)];
        if (std::isfinite(a))
            CHECK(b == doctest::Approx(a).epsilon(1e-12));
        else
            CHECK(std::isinf(b));
    }
}

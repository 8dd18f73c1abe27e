#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <fstream>

#include "hoikit/curation.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

using namespace hoikit;
using namespace hoikit::testing;

namespace {

DatasetSample sample_with(const std::string& id, const std::string& action,
                          Configuration configuration) {
    DatasetSample sample;
    sample.id = id;
    sample.action = action;
    sample.caption = "caption of " + id;
    sample.report.part_distance.fill(std::numeric_limits<double>::infinity());
    sample.report.configuration = configuration;
    return sample;
}

}  // namespace

TEST_CASE("disjoint spheres do not penetrate") {
    const TriMesh human = make_uv_sphere({0, 0, 0}, 1.0, 8, 12);
    const TriMesh object = make_uv_sphere({3, 0, 0}, 0.5, 8, 12);
    CHECK(penetration_fraction(human, object) == 0.0);
}

TEST_CASE("fully contained sphere penetrates completely") {
    const TriMesh human = make_uv_sphere({0, 0, 0}, 1.0, 8, 12);
    const TriMesh object = make_uv_sphere({0, 0, 0}, 0.3, 6, 9);
    CHECK(penetration_fraction(human, object) == 1.0);
}

TEST_CASE("half-embedded cube agrees with the ray-parity oracle") {
    const TriMesh human = make_box({0, 0, 0}, {2, 2, 2});
    // Object cube straddling the +x face: half its vertices inside.
    const TriMesh object = make_box({1.0, 0, 0}, {0.8, 0.8, 0.8});

    const double fraction = penetration_fraction(human, object);
    CHECK(fraction == doctest::Approx(0.5).epsilon(0.1));

    size_t inside = 0;
    for (const Vec3& v : object.vertices)
        if (inside_by_ray_parity(human, v)) ++inside;
    const double oracle = static_cast<double>(inside) / static_cast<double>(object.vertices.size());
    CHECK(fraction == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("winding verdicts match ray parity on random probes") {
    Rng rng(163);
    const TriMesh mesh = make_uv_sphere({0.2, -0.1, 0.4}, 0.9, 9, 13);
    for (int i = 0; i < 200; ++i) {
        const Vec3 p = rng.point_in_box({-1.5, -1.5, -1.5}, {2, 2, 2});
        // Skip probes within a shell of the discretized surface where the
        // polyhedral inside test and the sphere disagree by construction.
        const double r = (p - Vec3{0.2, -0.1, 0.4}).norm();
        if (std::abs(r - 0.9) < 0.1) continue;
        CHECK((generalized_winding_number(mesh, p) > 0.5) == inside_by_ray_parity(mesh, p));
    }
}

TEST_CASE("penetration fraction is invariant under joint rigid motion") {
    Rng rng(167);
    const TriMesh human = make_box({0, 0, 0}, {2, 2, 2});
    const TriMesh object = make_box({0.9, 0.2, 0}, {0.7, 0.7, 0.7});
    const double base = penetration_fraction(human, object);

    const Mat3 rotation = rotation_from_axis_angle(rng.unit_vector() * 1.1);
    const Vec3 shift{3, -1, 2};
    TriMesh moved_human = human;
    TriMesh moved_object = object;
    for (Vec3& v : moved_human.vertices) v = rotation * v + shift;
    for (Vec3& v : moved_object.vertices) v = rotation * v + shift;
    CHECK(penetration_fraction(moved_human, moved_object) == doctest::Approx(base));
}

TEST_CASE("object resting on the ground far from the human is kept") {
    const TriMesh human = make_uv_sphere({0, 1, 0}, 0.5, 6, 9);  // lowest point y=0.5
    const TriMesh object = make_box({3, 0.55, 0}, {0.2, 0.2, 0.2});
    // Ground plane at the human minimum (0.5); the object bottom sits at
    // 0.45, well within the ground tolerance.
    CHECK(floating_object_check(object, human));
}

TEST_CASE("object far from both human and ground is rejected") {
    const TriMesh human = make_uv_sphere({0, 1, 0}, 0.5, 6, 9);
    const TriMesh object = make_box({3, 2.5, 0}, {0.2, 0.2, 0.2});
    CHECK_FALSE(floating_object_check(object, human));
}

TEST_CASE("floating check respects a configured up axis") {
    // Same scene rotated so +z is up: verdict must match the +y original.
    const TriMesh human = make_uv_sphere({0, 1, 0}, 0.5, 6, 9);
    const TriMesh object = make_box({3, 2.5, 0}, {0.2, 0.2, 0.2});
    REQUIRE_FALSE(floating_object_check(object, human));

    auto swap_yz = [](TriMesh mesh) {
        for (Vec3& v : mesh.vertices) std::swap(v.y, v.z);
        return mesh;
    };
    FloatingCheckOptions z_up;
    z_up.up_axis = 2;
    CHECK_FALSE(floating_object_check(swap_yz(object), swap_yz(human), z_up));

    // A grounded object stays kept under the swapped axis as well.
    const TriMesh grounded = make_box({3, 0.55, 0}, {0.2, 0.2, 0.2});
    REQUIRE(floating_object_check(grounded, human));
    CHECK(floating_object_check(swap_yz(grounded), swap_yz(human), z_up));
}

TEST_CASE("floating check equals the two-condition predicate on random scenes") {
    Rng rng(173);
    const TriMesh human = make_uv_sphere({0, 1, 0}, 0.5, 6, 9);
    const double ground = bounding_box(human).min.y;
    for (int trial = 0; trial < 30; ++trial) {
        const Vec3 center = rng.point_in_box({-1.5, 0.3, -1.5}, {1.5, 2.5, 1.5});
        const TriMesh object = make_box(center, {0.15, 0.15, 0.15});

        double min_distance = std::numeric_limits<double>::infinity();
        double min_height = std::numeric_limits<double>::infinity();
        for (const Vec3& v : object.vertices) {
            min_distance = std::min(min_distance, brute_nearest(human.vertices, v).second);
            min_height = std::min(min_height, v.y - ground);
        }
        const bool expected_keep = !(min_distance > 0.30 && min_height > 0.15);
        CHECK(floating_object_check(object, human) == expected_keep);
    }
}

TEST_CASE("partition places each sample in exactly its configuration list") {
    std::vector<DatasetSample> samples;
    samples.push_back(sample_with("s3", "holding", Configuration::right_hand));
    samples.push_back(sample_with("s1", "holding", Configuration::right_hand));
    samples.push_back(sample_with("s2", "kicking", Configuration::left_leg));

    const SubsetPartition partition = partition_by_config(samples);
    CHECK(partition.per_configuration[static_cast<size_t>(Configuration::right_hand)] ==
          std::vector<std::string>{"s1", "s3"});
    CHECK(partition.per_configuration[static_cast<size_t>(Configuration::left_leg)] ==
          std::vector<std::string>{"s2"});

    size_t total = 0;
    for (const auto& list : partition.per_configuration) total += list.size();
    CHECK(total == samples.size());
}

TEST_CASE("empty input partitions into eight empty lists") {
    const SubsetPartition partition = partition_by_config({});
    for (const auto& list : partition.per_configuration) CHECK(list.empty());
}

TEST_CASE("random partition matches per-sample re-classification") {
    Rng rng(179);
    std::vector<DatasetSample> samples;
    for (int i = 0; i < 100; ++i)
        samples.push_back(sample_with("id" + std::to_string(i), "act",
                                      static_cast<Configuration>(rng.uniform_int(0, 7))));
    const SubsetPartition partition = partition_by_config(samples);
    for (const DatasetSample& sample : samples) {
        const auto& list =
            partition.per_configuration[static_cast<size_t>(sample.report.configuration)];
        CHECK(std::count(list.begin(), list.end(), sample.id) == 1);
        // And nowhere else.
        size_t appearances = 0;
        for (const auto& other : partition.per_configuration)
            appearances += static_cast<size_t>(std::count(other.begin(), other.end(), sample.id));
        CHECK(appearances == 1);
    }
}

TEST_CASE("kicking with a right-hand contact is filtered out") {
    ActionRules rules;
    rules.allowed["kicking"] = {Configuration::right_leg, Configuration::left_leg};
    std::vector<DatasetSample> samples{sample_with("bad", "kicking", Configuration::right_hand),
                                       sample_with("good", "kicking", Configuration::right_leg)};
    const auto kept = action_contact_filter(samples, rules);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].id == "good");
}

TEST_CASE("unknown actions are kept with a warning") {
    ActionRules rules;
    rules.allowed["kicking"] = {Configuration::right_leg};
    std::vector<DatasetSample> samples{sample_with("s", "juggling", Configuration::other)};
    std::vector<std::string> warnings;
    const auto kept = action_contact_filter(samples, rules, &warnings);
    CHECK(kept.size() == 1);
    CHECK(warnings.size() == 1);
}

TEST_CASE("rule filter equals direct table lookup on synthetic samples") {
    Rng rng(181);
    ActionRules rules;
    rules.allowed["hold"] = {Configuration::right_hand, Configuration::left_hand,
                             Configuration::both_hands};
    rules.allowed["kick"] = {Configuration::right_leg, Configuration::left_leg};
    rules.allowed["wear"] = {Configuration::on_back};

    std::vector<DatasetSample> samples;
    const char* actions[3] = {"hold", "kick", "wear"};
    for (int i = 0; i < 50; ++i)
        samples.push_back(sample_with("id" + std::to_string(i), actions[rng.uniform_int(0, 2)],
                                      static_cast<Configuration>(rng.uniform_int(0, 7))));
    const auto kept = action_contact_filter(samples, rules);
    for (const DatasetSample& sample : samples) {
        const bool expected = rules.allowed[sample.action].count(sample.report.configuration) > 0;
        const bool was_kept =
            std::count_if(kept.begin(), kept.end(),
                          [&](const DatasetSample& s) { return s.id == sample.id; }) > 0;
        CHECK(was_kept == expected);
    }
}

TEST_CASE("selection takes n distinct ids per subset") {
    std::vector<DatasetSample> samples;
    for (int i = 0; i < 200; ++i)
        samples.push_back(
            sample_with("r" + std::to_string(1000 + i), "hold", Configuration::right_hand));
    const SubsetPartition partition = partition_by_config(samples);
    const auto selected = select_subset(partition, 50, 7);
    CHECK(selected.size() == 50);
    std::set<std::string> unique(selected.begin(), selected.end());
    CHECK(unique.size() == 50);
}

TEST_CASE("selection takes the whole list when it is short") {
    std::vector<DatasetSample> samples;
    for (int i = 0; i < 7; ++i)
        samples.push_back(sample_with("s" + std::to_string(i), "hold", Configuration::on_back));
    const SubsetPartition partition = partition_by_config(samples);
    const auto selected = select_subset(partition, 50, 99);
    CHECK(selected.size() == 7);
}

TEST_CASE("selection is seed-deterministic and seed-sensitive") {
    std::vector<DatasetSample> samples;
    for (int i = 0; i < 200; ++i)
        samples.push_back(sample_with("q" + std::to_string(i), "hold",
                                      i % 2 ? Configuration::left_hand : Configuration::other));
    const SubsetPartition partition = partition_by_config(samples);
    const auto a = select_subset(partition, 50, 1234);
    const auto b = select_subset(partition, 50, 1234);
    CHECK(a == b);
    const auto c = select_subset(partition, 50, 1235);
    CHECK(a != c);
}

TEST_CASE("manifest JSONL round trip") {
    const SkinnedBody body = make_test_body();
    const TriMesh ball = make_uv_sphere(body.joints[9] - Vec3{0.05, 0, 0}, 0.05, 4, 6);
    DatasetSample sample;
    sample.id = "scene_0001";
    sample.caption = "a person holding a ball";
    sample.action = "holding";
    sample.renderings = {"render/0.png", "render/1.png"};
    sample.human_mesh_path = "meshes/human.ply";
    sample.object_mesh_path = "meshes/object.ply";
    sample.report = make_contact_report(body_mesh(body), body.part_labels, ball);

    TempDir dir("manifest");
    write_manifest(std::vector<DatasetSample>{sample}, dir.file("m.jsonl"));
    const auto back = read_manifest(dir.file("m.jsonl"));
    REQUIRE(back.size() == 1);
    CHECK(back[0].id == sample.id);
    CHECK(back[0].caption == sample.caption);
    CHECK(back[0].renderings == sample.renderings);
    CHECK(back[0].report.configuration == sample.report.configuration);
}

TEST_CASE("duplicate manifest ids are rejected") {
    TempDir dir("dup");
    std::ofstream out(dir.file("m.jsonl"));
    out << R"({"id": "a"})" << "\n" << R"({"id": "a"})" << "\n";
    out.close();
    CHECK_THROWS_AS(read_manifest(dir.file("m.jsonl")), ParseError);
}

TEST_CASE("rules file loads and rejects unknown configurations") {
    TempDir dir("rules");
    std::ofstream(dir.file("r.json"))
        << R"({"kicking": ["right_leg", "left_leg"], "holding": ["right_hand"]})";
    const ActionRules rules = load_action_rules(dir.file("r.json"));
    CHECK(rules.allowed.at("kicking").count(Configuration::right_leg) == 1);

    std::ofstream(dir.file("bad.json")) << R"({"kicking": ["right_elbow"]})";
    CHECK_THROWS_AS(load_action_rules(dir.file("bad.json")), ParseError);
}

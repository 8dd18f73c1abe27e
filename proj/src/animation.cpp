#include "hoikit/animation.hpp"

#include "hoikit/parallel.hpp"

namespace hoikit {

std::vector<AnimatedFrame> animate_scene(const TriMesh& human, const SkinBinding& binding,
                                         const TriMesh& object, const SkinnedBody& body,
                                         std::span<const Pose> pose_sequence,
                                         const Similarity7DoF& align) {
    if (binding.weights.size() != human.vertices.size())
        throw InvalidArgument("animate_scene: binding does not match the human mesh");
    for (const Pose& pose : pose_sequence)
        if (pose.rotations.size() != body.joints.size())
            throw InvalidArgument("animate_scene: pose joint count mismatch");

    const Similarity7DoF to_body = align.inverse();
    const TriMesh human_body_space = apply_similarity(to_body, human);
    const TriMesh object_body_space = apply_similarity(to_body, object);
    const int attachment = object.empty() ? -1 : attach_object_joint(object_body_space, body);

    std::vector<AnimatedFrame> frames;
    frames.reserve(pose_sequence.size());
    for (const Pose& pose : pose_sequence) {
        const std::vector<RigidTransform> skin = skinning_transforms(body, pose);

        AnimatedFrame frame;
        frame.human = human_body_space;
        parallel_for(frame.human.vertices.size(), [&](size_t v) {
            Vec3 blended;
            for (const JointWeight& jw : binding.weights[v])
                blended += skin[static_cast<size_t>(jw.joint)].apply(
                               human_body_space.vertices[v]) *
                           jw.weight;
            frame.human.vertices[v] = blended;
        });
        frame.human = apply_similarity(align, frame.human);

        frame.object = object_body_space;
        if (attachment >= 0) {
            const RigidTransform& rigid = skin[static_cast<size_t>(attachment)];
            for (Vec3& v : frame.object.vertices) v = rigid.apply(v);
        }
        frame.object = apply_similarity(align, frame.object);

        frames.push_back(std::move(frame));
    }
    return frames;
}

}  // namespace hoikit

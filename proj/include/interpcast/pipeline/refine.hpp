#pragma once

#include "interpcast/domain/types.hpp"
#include "interpcast/errors.hpp"

#include <utility>

namespace interpcast::pipeline {

template <typename A>
struct RefineOutcome {
    A artifact;
    int rounds_used = 0;
    bool passed = false;
};

// Shared review-revise loop: review the artifact; while the reviewer fails
// it and budget remains, revise and review again. The artifact leaves the
// loop accepted, or accepted_with_warnings when the budget ran out.
template <typename A, typename Review, typename Revise>
RefineOutcome<A> refine_loop(A artifact, Review&& review, Revise&& revise, int i_max) {
    if (i_max < 0) throw PreconditionError("i_max must be >= 0");

    auto feedback = review(artifact);
    int rounds = 0;
    while (!feedback.pass() && rounds < i_max) {
        artifact = revise(artifact, feedback);
        ++rounds;
        feedback = review(artifact);
    }

    RefineOutcome<A> out;
    out.passed = feedback.pass();
    out.rounds_used = rounds;
    artifact.status = out.passed ? domain::ArtifactStatus::accepted
                                 : domain::ArtifactStatus::accepted_with_warnings;
    out.artifact = std::move(artifact);
    return out;
}

} // namespace interpcast::pipeline

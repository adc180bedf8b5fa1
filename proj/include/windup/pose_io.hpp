#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "windup/errors.hpp"
#include "windup/pose.hpp"

namespace windup {

class IngestError : public PipelineError {
public:
    using PipelineError::PipelineError;
};

// One episode per line: {"episode_id": str, "fps": num, "label": str?,
// "frames": [[[x,y,z] x 17] x T]}. Joint order follows the JointId ordinals.
PoseSequence parse_pose_line(const std::string& line);
std::string pose_to_line(const PoseSequence& seq);

struct IngestSkip {
    std::string episode_id;  // line number placeholder when the id is unreadable
    std::string reason;
};

struct IngestResult {
    std::vector<PoseSequence> episodes;
    std::vector<IngestSkip> skipped;
};

// Reads a JSONL pose file, applying the ingest filters (length >= 100,
// 17-joint layout, finite coordinates). Invalid lines are tallied, not fatal.
IngestResult read_pose_jsonl(const std::string& path);

void write_pose_jsonl(const std::string& path, const std::vector<PoseSequence>& episodes);

}  // namespace windup

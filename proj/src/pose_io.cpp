#include "windup/pose_io.hpp"

#include <cmath>
#include <fstream>

#include <json.hpp>

#include "windup/format.hpp"

namespace windup {

using nlohmann::json;

PoseSequence parse_pose_line(const std::string& line) {
    json doc;
    try {
        doc = json::parse(line);
    } catch (const json::exception& e) {
        throw IngestError("bad_json", e.what());
    }
    if (!doc.is_object()) throw IngestError("bad_schema", "line is not a JSON object");

    PoseSequence seq;
    try {
        seq.episode_id = doc.at("episode_id").get<std::string>();
        seq.fps = doc.at("fps").get<double>();
    } catch (const json::exception& e) {
        throw IngestError("bad_schema", e.what());
    }
    if (!(seq.fps > 0.0) || !std::isfinite(seq.fps)) {
        throw IngestError("bad_fps", "fps must be a positive finite number");
    }
    if (doc.contains("label") && !doc["label"].is_null()) {
        std::string code;
        try {
            code = doc["label"].get<std::string>();
        } catch (const json::exception& e) {
            throw IngestError("bad_schema", e.what());
        }
        try {
            seq.label = parse_pitch_type(code);
        } catch (const std::invalid_argument&) {
            throw IngestError("unknown_label", "pitch-type code '" + code + "'");
        }
    }

    const auto frames_it = doc.find("frames");
    if (frames_it == doc.end() || !frames_it->is_array()) {
        throw IngestError("bad_schema", "missing frames array");
    }
    if (frames_it->size() < kMinSequenceLength) {
        throw IngestError("too_short", "episode has " + std::to_string(frames_it->size()) +
                                           " frames, minimum is " +
                                           std::to_string(kMinSequenceLength));
    }
    seq.frames.reserve(frames_it->size());
    for (const auto& frame_json : *frames_it) {
        if (!frame_json.is_array() || frame_json.size() != kJointCount) {
            throw IngestError("bad_joint_count", "frame does not hold 17 joints");
        }
        PoseFrame frame;
        for (int j = 0; j < kJointCount; ++j) {
            const auto& p = frame_json[j];
            if (!p.is_array() || p.size() != 3) {
                throw IngestError("bad_joint_count", "joint entry is not an [x,y,z] triple");
            }
            Vec3 v;
            try {
                v = {p[0].get<double>(), p[1].get<double>(), p[2].get<double>()};
            } catch (const json::exception& e) {
                throw IngestError("bad_schema", e.what());
            }
            if (!std::isfinite(v.x) || !std::isfinite(v.y) || !std::isfinite(v.z)) {
                throw IngestError("nonfinite_coordinate",
                                  "joint " + joint_names()[j] + " has a non-finite coordinate");
            }
            frame.joints[j] = v;
        }
        seq.frames.push_back(frame);
    }
    return seq;
}

std::string pose_to_line(const PoseSequence& seq) {
    std::string out;
    out.reserve(seq.frames.size() * kJointCount * 24 + 64);
    out += "{\"episode_id\":";
    out += json(seq.episode_id).dump();
    out += ",\"fps\":";
    append_double(out, seq.fps);
    if (seq.label) {
        out += ",\"label\":\"";
        out += pitch_code(*seq.label);
        out += "\"";
    }
    out += ",\"frames\":[";
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
        if (t) out += ',';
        out += '[';
        for (int j = 0; j < kJointCount; ++j) {
            if (j) out += ',';
            const Vec3& p = seq.frames[t].joints[j];
            out += '[';
            append_double(out, p.x);
            out += ',';
            append_double(out, p.y);
            out += ',';
            append_double(out, p.z);
            out += ']';
        }
        out += ']';
    }
    out += "]}";
    return out;
}

IngestResult read_pose_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_pose_jsonl: cannot open '" + path + "'");
    IngestResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            result.episodes.push_back(parse_pose_line(line));
        } catch (const IngestError& e) {
            std::string id = "line " + std::to_string(line_no);
            // Recover the id for the tally when the JSON itself is readable.
            try {
                const json doc = json::parse(line);
                if (doc.is_object() && doc.contains("episode_id") &&
                    doc["episode_id"].is_string()) {
                    id = doc["episode_id"].get<std::string>();
                }
            } catch (const json::exception&) {
            }
            result.skipped.push_back({id, e.reason()});
        }
    }
    return result;
}

void write_pose_jsonl(const std::string& path, const std::vector<PoseSequence>& episodes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_pose_jsonl: cannot open '" + path + "'");
    for (const auto& seq : episodes) {
        out << pose_to_line(seq) << '\n';
    }
}

}  // namespace windup

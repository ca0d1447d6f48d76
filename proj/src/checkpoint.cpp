#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "baseseq/searcher.hpp"

namespace baseseq {

std::uint64_t fnv1a(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t result_digest(const std::vector<FoundQuad>& found) {
    std::string buf;
    for (const auto& f : found) {
        buf += f.quad.a.str() + '|' + f.quad.b.str() + '|' + f.quad.c.str() + '|' + f.quad.d.str() + '|' +
               std::to_string(f.sum_index) + '|' + std::to_string(f.residue_index) + '\n';
    }
    return fnv1a(buf);
}

void checkpoint_save(const std::string& path, const Checkpoint& cp) {
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["config_digest"] = cp.config_digest;
    j["next_task"] = cp.next_task;
    j["total_tasks"] = cp.total_tasks;
    j["counters"] = {{"candidates", cp.counters.candidates},
                     {"psd_rejected", cp.counters.psd_rejected},
                     {"backtrack_nodes", cp.counters.backtrack_nodes},
                     {"completions", cp.counters.completions},
                     {"truncated_tasks", cp.counters.truncated_tasks}};
    auto found = nlohmann::ordered_json::array();
    for (const auto& f : cp.found) {
        found.push_back({{"X", f.quad.a.str()},
                         {"Y", f.quad.b.str()},
                         {"Z", f.quad.c.str()},
                         {"W", f.quad.d.str()},
                         {"sum_profile", f.sum_index},
                         {"residue_profile", f.residue_index}});
    }
    j["found"] = std::move(found);
    j["result_digest"] = cp.result_digest;

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw ResourceLimit("cannot write checkpoint " + tmp);
        out << j.dump() << '\n';
        if (!out) throw ResourceLimit("cannot write checkpoint " + tmp);
    }
    std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> checkpoint_load(const std::string& path, Kind kind) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    const std::string text = ss.str();
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) return std::nullopt;
    try {
        const auto j = nlohmann::json::parse(text);
        if (j.at("version").get<int>() != 1) throw ResumeError("unsupported checkpoint version");
        Checkpoint cp;
        cp.config_digest = j.at("config_digest").get<std::uint64_t>();
        cp.next_task = j.at("next_task").get<std::size_t>();
        cp.total_tasks = j.at("total_tasks").get<std::size_t>();
        const auto& c = j.at("counters");
        cp.counters.candidates = c.at("candidates").get<std::uint64_t>();
        cp.counters.psd_rejected = c.at("psd_rejected").get<std::uint64_t>();
        cp.counters.backtrack_nodes = c.at("backtrack_nodes").get<std::uint64_t>();
        cp.counters.completions = c.at("completions").get<std::uint64_t>();
        cp.counters.truncated_tasks = c.at("truncated_tasks").get<std::uint64_t>();
        cp.counters.tasks_done = cp.next_task;
        for (const auto& f : j.at("found")) {
            FoundQuad fq;
            fq.quad = SeqQuad::make(SignSeq::parse(f.at("X").get<std::string>()),
                                    SignSeq::parse(f.at("Y").get<std::string>()),
                                    SignSeq::parse(f.at("Z").get<std::string>()),
                                    SignSeq::parse(f.at("W").get<std::string>()), kind);
            fq.sum_index = f.at("sum_profile").get<std::size_t>();
            fq.residue_index = f.at("residue_profile").get<std::size_t>();
            cp.found.push_back(std::move(fq));
        }
        cp.result_digest = j.at("result_digest").get<std::uint64_t>();
        return cp;
    } catch (const nlohmann::json::exception& e) {
        throw ResumeError(std::string("corrupt checkpoint: ") + e.what());
    } catch (const MalformedInput& e) {
        throw ResumeError(std::string("corrupt checkpoint: ") + e.what());
    }
}

}  // namespace baseseq

// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>

#include <fmt/format.h>

#include "json.hpp"

#include "forge/error.hpp"
#include "forge/scene_json.hpp"

namespace forge {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Cross-process writer lock on <root>/.lock.
class FileLock {
  public:
    explicit FileLock(const fs::path& path) {
        fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
        if (fd_ < 0 || ::flock(fd_, LOCK_EX) != 0) {
            if (fd_ >= 0) ::close(fd_);
            throw Error(Errc::io, fmt::format("cannot lock {}", path.string()));
        }
    }
    ~FileLock() {
        ::flock(fd_, LOCK_UN);
        ::close(fd_);
    }
    FileLock(const FileLock&) = delete;
    FileLock& operator=(const FileLock&) = delete;

  private:
    int fd_ = -1;
};

std::string read_text(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, fmt::format("cannot open {}", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

void write_file_atomic(const fs::path& path, std::string_view content) {
    static std::atomic<unsigned long> sequence{0};
    const fs::path tmp = path.parent_path() / fmt::format(".{}.tmp.{}.{}", path.filename().string(),
                                                          ::getpid(), sequence++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw Error(Errc::io, fmt::format("cannot write {}", tmp.string()));
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw Error(Errc::io, fmt::format("cannot publish {}", path.string()));
    }
}

void SceneQuery::validate() const {
    if (min_rooms && max_rooms && *min_rooms > *max_rooms) {
        throw Error(Errc::invalid_argument, "min_rooms > max_rooms");
    }
    if (limit && *limit < 1) {
        throw Error(Errc::invalid_argument, "limit must be >= 1");
    }
}

SceneSummary summarize(const SceneDocument& scene) {
    SceneSummary s;
    s.scene_id = scene.scene_id;
    s.room_count = static_cast<int>(scene.rooms.size());
    for (const auto& r : scene.rooms) {
        s.room_areas.push_back(r.area);
        s.room_types.push_back(r.room_type);
    }
    return s;
}

bool matches(const SceneSummary& s, const SceneQuery& q) {
    if (q.min_rooms && s.room_count < *q.min_rooms) return false;
    if (q.max_rooms && s.room_count > *q.max_rooms) return false;
    if (q.min_area_m2) {
        for (double a : s.room_areas) {
            if (a < *q.min_area_m2) return false;
        }
    }
    if (q.required_room_types) {
        for (RoomType t : *q.required_room_types) {
            if (std::find(s.room_types.begin(), s.room_types.end(), t) == s.room_types.end()) {
                return false;
            }
        }
    }
    return true;
}

bool SceneStore::valid_scene_id(const std::string& id) {
    if (id.empty() || id.size() > 128 || id.front() == '.') return false;
    return std::all_of(id.begin(), id.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
               c == '_' || c == '-' || c == '.';
    });
}

SceneStore::SceneStore(fs::path root) : root_(std::move(root)) {
    std::error_code ec;
    fs::create_directories(root_ / "scenes", ec);
    if (ec) throw Error(Errc::io, fmt::format("cannot create store at {}", root_.string()));
    index_ = read_index_file();
}

fs::path SceneStore::scene_path(const std::string& id) const {
    return root_ / "scenes" / (id + ".json");
}

std::vector<SceneSummary> SceneStore::read_index_file() const {
    const fs::path path = root_ / "index.json";
    if (!fs::exists(path)) return {};
    json j;
    try {
        j = json::parse(read_text(path));
        std::vector<SceneSummary> out;
        for (const auto& e : j.at("scenes")) {
            SceneSummary s;
            s.scene_id = e.at("scene_id").get<std::string>();
            s.room_count = e.at("room_count").get<int>();
            s.room_areas = e.at("room_areas").get<std::vector<double>>();
            for (const auto& t : e.at("room_types")) {
                const auto rt = parse_room_type(t.get<std::string>());
                if (!rt) throw Error(Errc::validation, "bad room type in index");
                s.room_types.push_back(*rt);
            }
            out.push_back(std::move(s));
        }
        return out;
    } catch (const json::exception& ex) {
        throw Error(Errc::io, fmt::format("corrupt index {}: {}", path.string(), ex.what()));
    }
}

void SceneStore::write_index_locked(const std::vector<SceneSummary>& index) const {
    json scenes = json::array();
    for (const auto& s : index) {
        json types = json::array();
        for (RoomType t : s.room_types) types.push_back(std::string(to_string(t)));
        scenes.push_back({{"scene_id", s.scene_id},
                          {"room_count", s.room_count},
                          {"room_areas", s.room_areas},
                          {"room_types", std::move(types)}});
    }
    json j{{"version", 1}, {"scenes", std::move(scenes)}};
    write_file_atomic(root_ / "index.json", j.dump() + "\n");
}

std::string SceneStore::ingest(const SceneDocument& document) {
    return ingest_many(std::span<const SceneDocument>(&document, 1)).front();
}

std::vector<std::string> SceneStore::ingest_many(std::span<const SceneDocument> documents) {
    for (const auto& doc : documents) {
        if (!valid_scene_id(doc.scene_id)) {
            throw Error(Errc::validation, fmt::format("scene id '{}' is not storable", doc.scene_id));
        }
        const auto violations = validate_scene(doc);
        if (!violations.empty()) {
            throw Error(Errc::validation,
                        fmt::format("scene {} failed validation: {} ({})", doc.scene_id,
                                    violations.front().message, to_string(violations.front().kind)));
        }
    }
    std::unique_lock guard(mutex_);
    FileLock lock(root_ / ".lock");
    std::vector<SceneSummary> index = read_index_file();
    std::vector<std::string> ids;
    for (const auto& doc : documents) {
        write_file_atomic(scene_path(doc.scene_id), serialize_scene(doc));
        SceneSummary summary = summarize(doc);
        auto it = std::lower_bound(index.begin(), index.end(), doc.scene_id,
                                   [](const SceneSummary& s, const std::string& id) { return s.scene_id < id; });
        if (it != index.end() && it->scene_id == doc.scene_id) {
            *it = std::move(summary);
        } else {
            index.insert(it, std::move(summary));
        }
        ids.push_back(doc.scene_id);
    }
    write_index_locked(index);
    index_ = std::move(index);
    return ids;
}

std::vector<std::string> SceneStore::query(const SceneQuery& q) const {
    q.validate();
    std::shared_lock guard(mutex_);
    std::vector<std::string> out;
    for (const auto& s : index_) {
        if (q.limit && static_cast<int>(out.size()) >= *q.limit) break;
        if (matches(s, q)) out.push_back(s.scene_id);
    }
    return out;
}

bool SceneStore::contains(const std::string& scene_id) const {
    std::shared_lock guard(mutex_);
    return std::binary_search(index_.begin(), index_.end(), scene_id,
                              [](const auto& a, const auto& b) {
                                  if constexpr (std::is_same_v<std::decay_t<decltype(a)>, std::string>) {
                                      return a < b.scene_id;
                                  } else {
                                      return a.scene_id < b;
                                  }
                              });
}

SceneDocument SceneStore::load(const std::string& scene_id) const {
    if (!valid_scene_id(scene_id) || !contains(scene_id)) {
        throw Error(Errc::not_found, fmt::format("scene '{}' not in store", scene_id));
    }
    return parse_scene(read_text(scene_path(scene_id)));
}

std::vector<SceneSummary> SceneStore::index() const {
    std::shared_lock guard(mutex_);
    return index_;
}

std::size_t SceneStore::size() const {
    std::shared_lock guard(mutex_);
    return index_.size();
}

void SceneStore::refresh() {
    std::unique_lock guard(mutex_);
    index_ = read_index_file();
}

}  // namespace forge

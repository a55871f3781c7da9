#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "manipify/error.hpp"
#include "manipify/hashcat.hpp"
#include "manipify/io.hpp"

namespace manipify {

struct UserTruth {
  bool manipulator = false;
  bool bot = false;

  friend bool operator==(const UserTruth&, const UserTruth&) = default;
};

struct HashtagTruth {
  std::optional<Category> category;  // unset when the hashtag carries no topic label
  std::optional<bool> local;

  friend bool operator==(const HashtagTruth&, const HashtagTruth&) = default;
};

/// Ground-truth labels stored next to a corpus as truth.json.
struct GroundTruth {
  static constexpr int kSchemaVersion = 1;

  std::map<std::string, UserTruth, std::less<>> users;
  std::map<std::string, HashtagTruth, std::less<>> hashtags;

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json ju = nlohmann::ordered_json::object();
    for (const auto& [id, t] : users) ju[id] = {{"manipulator", t.manipulator}, {"bot", t.bot}};
    nlohmann::ordered_json jh = nlohmann::ordered_json::object();
    for (const auto& [tag, t] : hashtags) {
      nlohmann::ordered_json entry = nlohmann::ordered_json::object();
      entry["category"] = t.category ? nlohmann::ordered_json(std::string(to_string(*t.category))) : nullptr;
      entry["local"] = t.local ? nlohmann::ordered_json(*t.local) : nullptr;
      jh[tag] = std::move(entry);
    }
    return {{"schema_version", kSchemaVersion}, {"users", std::move(ju)}, {"hashtags", std::move(jh)}};
  }

  static GroundTruth from_json(const nlohmann::json& j) {
    GroundTruth g;
    try {
      if (j.at("schema_version").get<int>() != kSchemaVersion)
        throw Error(Errc::SchemaMismatch, "truth", j.at("schema_version").get<int>());
      for (const auto& [id, t] : j.at("users").items())
        g.users[id] = {t.value("manipulator", false), t.value("bot", false)};
      for (const auto& [tag, t] : j.at("hashtags").items()) {
        HashtagTruth h;
        if (auto it = t.find("category"); it != t.end() && !it->is_null()) {
          h.category = parse_category(it->get<std::string>());
          if (!h.category) throw Error(Errc::SchemaMismatch, tag, std::nullopt, "unknown category");
        }
        if (auto it = t.find("local"); it != t.end() && !it->is_null()) h.local = it->get<bool>();
        g.hashtags[tag] = h;
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(Errc::SchemaMismatch, "truth", std::nullopt, e.what());
    }
    return g;
  }

  static GroundTruth load(const std::filesystem::path& path) {
    auto j = nlohmann::json::parse(io::read_file(path), nullptr, false);
    if (j.is_discarded()) throw Error(Errc::SchemaMismatch, path.string(), std::nullopt, "invalid JSON");
    return from_json(j);
  }

  friend bool operator==(const GroundTruth&, const GroundTruth&) = default;
};

}  // namespace manipify

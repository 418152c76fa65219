//
// Copyright 2026 The ambigeval Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "ambigeval/config.hpp"

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "ambigeval/errors.hpp"

namespace ambigeval {

namespace {

// Paths in the file resolve relative to the file's own directory.
std::string resolve(const std::filesystem::path& base, const std::string& path) {
  if (path.empty()) return path;
  const std::filesystem::path p(path);
  return p.is_absolute() ? p.string() : (base / p).string();
}

}  // namespace

ServiceConfig ServiceConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }

  const std::filesystem::path base = std::filesystem::path(path).parent_path();
  ServiceConfig cfg;
  try {
    if (!doc.contains("dataset")) {
      throw ConfigError("config: missing 'dataset'");
    }
    cfg.dataset_path = resolve(base, doc["dataset"].get<std::string>());
    cfg.data_root = resolve(base, doc.value("data_root", std::string{}));

    if (doc.contains("ratio")) {
      cfg.ratio.ambiguous = doc["ratio"].value("ambiguous", 3u);
      cfg.ratio.unambiguous = doc["ratio"].value("unambiguous", 1u);
    }
    cfg.batch_size = doc.value("batch_size", std::size_t{4});

    if (doc.contains("dapo")) {
      const auto& d = doc["dapo"];
      cfg.dapo.eps_low = d.value("eps_low", 0.2);
      cfg.dapo.eps_high = d.value("eps_high", 0.28);
      cfg.dapo.group_size = d.value("group_size", 16);
      cfg.dapo.max_completion_tokens = d.value("max_completion_tokens", 2500);
    }
    cfg.dapo.validate();

    cfg.sql_timeout_ms = doc.value("sql_timeout_ms", 5000);
    if (doc.contains("server")) {
      cfg.host = doc["server"].value("host", std::string{"127.0.0.1"});
      cfg.port = doc["server"].value("port", 8080);
    }
    if (doc.contains("judge")) {
      const auto& j = doc["judge"];
      cfg.judge_url = j.value("url", std::string{});
      cfg.judge_model = j.value("model", std::string{});
      cfg.judge_api_key_env = j.value("api_key_env", std::string{"JUDGE_API_KEY"});
      cfg.judge_template_path = resolve(base, j.value("template_path", std::string{}));
      cfg.judge_timeout_ms = j.value("timeout_ms", 30000);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "': " + e.what());
  }
  return cfg;
}

}  // namespace ambigeval

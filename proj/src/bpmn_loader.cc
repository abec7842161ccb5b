/* Copyright 2026 The procmine Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    https://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include <algorithm>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"
#include "procmine/bpmn.h"

namespace procmine {
namespace {

namespace fs = std::filesystem;

bool is_model_file(const fs::path& p) {
  const std::string name = p.filename().string();
  auto ends_with = [&](std::string_view suffix) {
    return name.size() >= suffix.size() &&
           name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0;
  };
  return ends_with(".bpmn") || ends_with(".bpmn20.xml");
}

void add_graphs(std::string_view xml, const std::string& origin, ModelLoadResult& result,
                const std::string& only_key = {}) {
  for (auto& g : parse_bpmn_definitions(xml)) {
    if (g.nodes.empty() || g.process_id.empty()) continue;
    if (!only_key.empty() && g.process_id != only_key) continue;
    if (result.models.contains(g.process_id)) {
      result.warnings.push_back(origin + ": process '" + g.process_id +
                                "' already loaded, keeping the first");
      continue;
    }
    const std::string key = g.process_id;
    result.models.emplace(key, std::move(g));
  }
}

struct RestEndpoint {
  std::string scheme_host_port;
  std::string prefix;
};

RestEndpoint split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw SourceError("rest: not a URL: '" + url + "'");
  const auto path_start = url.find('/', scheme_end + 3);
  RestEndpoint ep;
  ep.scheme_host_port = url.substr(0, path_start);
  ep.prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!ep.prefix.empty() && ep.prefix.back() == '/') ep.prefix.pop_back();
  return ep;
}

std::string get_or_throw(httplib::Client& client, const std::string& path) {
  auto res = client.Get(path);
  if (!res) {
    throw SourceError("rest: GET " + path + " failed: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw SourceError("rest: GET " + path + " returned HTTP " + std::to_string(res->status));
  }
  return res->body;
}

struct Definition {
  std::string id;
  std::string key;
};

std::vector<Definition> list_definitions(httplib::Client& client, const RestEndpoint& ep) {
  const std::string body = get_or_throw(client, ep.prefix + "/process-definition?latestVersion=true");
  std::vector<Definition> out;
  try {
    for (const auto& d : nlohmann::json::parse(body)) {
      out.push_back(Definition{d.at("id").get<std::string>(), d.value("key", std::string())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw SourceError(std::string("rest: bad process-definition listing: ") + e.what());
  }
  return out;
}

std::string fetch_xml(httplib::Client& client, const RestEndpoint& ep, const Definition& d) {
  const std::string body =
      get_or_throw(client, ep.prefix + "/process-definition/" + d.id + "/xml");
  try {
    return nlohmann::json::parse(body).at("bpmn20Xml").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw SourceError("rest: definition '" + d.id + "': " + e.what());
  }
}

}  // namespace

ModelLoadResult load_models_from_directory(const fs::path& dir) {
  ModelLoadResult result;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw SourceError("models: not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (auto it = fs::recursive_directory_iterator(dir, ec); !ec && it != fs::end(it);
       it.increment(ec)) {
    if (it->is_regular_file() && is_model_file(it->path())) files.push_back(it->path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    if (!in) {
      result.warnings.push_back(file.string() + ": unreadable, skipped");
      continue;
    }
    try {
      add_graphs(buf.str(), file.string(), result);
    } catch (const Error& e) {
      result.warnings.push_back(file.string() + ": " + e.what() + ", skipped");
    }
  }
  return result;
}

std::map<std::string, std::string> fetch_model_xml_from_rest(const std::string& base_url,
                                                             std::vector<std::string>* warnings) {
  const RestEndpoint ep = split_url(base_url);
  httplib::Client client(ep.scheme_host_port);
  client.set_connection_timeout(5);
  client.set_read_timeout(30);
  std::map<std::string, std::string> out;
  for (const auto& d : list_definitions(client, ep)) {
    try {
      out[d.key.empty() ? d.id : d.key] = fetch_xml(client, ep, d);
    } catch (const Error& e) {
      if (warnings) warnings->push_back(e.what());
    }
  }
  return out;
}

ModelLoadResult load_models_from_rest(const std::string& base_url) {
  ModelLoadResult result;
  for (const auto& [key, xml] : fetch_model_xml_from_rest(base_url, &result.warnings)) {
    try {
      const std::size_t before = result.models.size();
      add_graphs(xml, "rest definition '" + key + "'", result, key);
      if (result.models.size() == before) {
        result.warnings.push_back("rest definition '" + key + "': no process with that key");
      }
    } catch (const Error& e) {
      result.warnings.push_back("rest definition '" + key + "': " + e.what());
    }
  }
  return result;
}

ModelLoadResult load_models(const std::string& source) {
  if (source.rfind("http://", 0) == 0 || source.rfind("https://", 0) == 0) {
    return load_models_from_rest(source);
  }
  return load_models_from_directory(source);
}

}  // namespace procmine

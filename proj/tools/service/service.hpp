/*
 * Copyright (c) 2026, The Lightbox Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <string>

#include "handles.hpp"
#include "json.hpp"

namespace httplib {
class Server;
}

namespace lightbox::tools {

struct Response {
  int status = 200;
  nlohmann::json body;
};

/// Request handlers over one immutable model. Every handler is const and
/// safe to call from several threads at once.
class Service {
 public:
  /// `background` feeds the explanation baseline; its labels are ignored.
  Service(ModelPtr model, DatasetPtr background);

  /// Background defaults to a seeded sample of the table1 configurations.
  static Service open(const std::string& model_path, const std::string& background_path = "",
                      std::size_t background_size = 64, std::uint64_t seed = 42);

  Response health() const;
  Response design_space() const;
  Response predict(const std::string& body) const;
  Response explain(const std::string& body) const;

  /// Registers the four routes.
  void mount(httplib::Server& server) const;

  const std::string& digest() const { return digest_; }

 private:
  bool parse_room(const std::string& body, lbx_room_config& room, Response& error) const;

  ModelPtr model_;
  DatasetPtr background_;
  lbx_model_info info_{};
  lbx_room_config defaults_{};
  std::string digest_;
  nlohmann::json design_space_;
};

}  // namespace lightbox::tools

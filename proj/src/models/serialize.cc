// Copyright 2026 The TCN Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// SPDX-License-Identifier: Apache-2.0

#include "tcn/models/serialize.h"

#include <algorithm>
#include <climits>
#include <map>
#include <set>
#include <sstream>
#include <type_traits>
#include <variant>

#include "internal/bytes.h"
#include "internal/text.h"
#include "tcn/error.h"

namespace tcn::models {
namespace {

constexpr std::string_view kMagic = "TCNM";

std::vector<uint32_t> ShapeOf(const LayerInfo& layer, bool weight) {
  if (!weight) return {static_cast<uint32_t>(layer.out_channels)};
  if (layer.kind == "conv") {
    return {static_cast<uint32_t>(layer.out_channels),
            static_cast<uint32_t>(layer.in_channels),
            static_cast<uint32_t>(layer.taps)};
  }
  return {static_cast<uint32_t>(layer.out_channels),
          static_cast<uint32_t>(layer.in_channels)};
}

// Shapes aligned with ParameterNames() / Params::Tensors().
std::vector<std::vector<uint32_t>> TensorShapes(const ModelSpec& spec) {
  const auto table = LayerTable(spec);
  std::vector<std::vector<uint32_t>> shapes;
  for (const char* kind : {"conv", "dense"}) {
    for (const auto& layer : table) {
      if (layer.kind != kind) continue;
      shapes.push_back(ShapeOf(layer, true));
      shapes.push_back(ShapeOf(layer, false));
    }
  }
  return shapes;
}

std::string JoinInts(const std::vector<int>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

class RecordFields {
 public:
  explicit RecordFields(const std::string& record)
      : fields_(internal::ParseKeyValueLines(record, "spec record")) {}

  const std::string& Get(const std::string& key) {
    for (auto& kv : fields_) {
      if (kv.key == key) {
        used_.insert(key);
        return kv.value;
      }
    }
    throw ParseError("spec record: missing key '" + key + "'");
  }

  int Int(const std::string& key) {
    int64_t v = 0;
    const std::string& s = Get(key);
    if (!internal::ParseInt64(s, v) || v < INT32_MIN || v > INT32_MAX) {
      throw ParseError("spec record: bad integer for '" + key + "': '" + s +
                       "'");
    }
    return static_cast<int>(v);
  }

  bool Bool(const std::string& key) {
    const std::string& s = Get(key);
    if (s == "0") return false;
    if (s == "1") return true;
    throw ParseError("spec record: bad boolean for '" + key + "': '" + s +
                     "'");
  }

  void ExpectAllUsed() const {
    for (const auto& kv : fields_) {
      if (!used_.count(kv.key)) {
        throw ParseError("spec record: unknown key '" + kv.key + "'");
      }
    }
  }

 private:
  std::vector<internal::KeyValue> fields_;
  std::set<std::string> used_;
};

}  // namespace

std::string FormatSpecRecord(const ModelSpec& spec) {
  std::ostringstream out;
  out << "architecture=" << ArchitectureName(spec) << '\n';
  std::visit(
      [&](const auto& s) {
        out << "input_dim=" << s.input_dim << '\n'
            << "num_classes=" << s.num_classes << '\n'
            << "causal=" << (s.causal ? 1 : 0) << '\n'
            << "activation=" << nn::ActivationName(s.activation) << '\n';
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, EdTcnSpec>) {
          out << "num_layers=" << s.num_layers << '\n'
              << "filter_duration=" << s.filter_duration << '\n'
              << "filters=" << JoinInts(s.filters) << '\n';
        } else {
          out << "num_blocks=" << s.num_blocks << '\n'
              << "layers_per_block=" << s.layers_per_block << '\n'
              << "filters=" << s.filters << '\n';
        }
      },
      spec);
  return out.str();
}

ModelSpec ParseSpecRecord(const std::string& record) {
  RecordFields fields(record);
  const std::string arch = fields.Get("architecture");
  ModelSpec spec;
  auto common = [&](auto& s) {
    s.input_dim = fields.Int("input_dim");
    s.num_classes = fields.Int("num_classes");
    s.causal = fields.Bool("causal");
    s.activation = nn::ParseActivation(fields.Get("activation"));
  };
  if (arch == "ed_tcn") {
    EdTcnSpec s;
    common(s);
    s.num_layers = fields.Int("num_layers");
    s.filter_duration = fields.Int("filter_duration");
    const std::string& filters = fields.Get("filters");
    if (!filters.empty()) {
      for (auto part : internal::Split(filters, ',')) {
        int64_t v = 0;
        if (!internal::ParseInt64(part, v) || v < 1 || v > INT32_MAX) {
          throw ParseError("spec record: bad filter count '" +
                           std::string(part) + "'");
        }
        s.filters.push_back(static_cast<int>(v));
      }
    }
    spec = s;
  } else if (arch == "dilated_tcn") {
    DilatedTcnSpec s;
    common(s);
    s.num_blocks = fields.Int("num_blocks");
    s.layers_per_block = fields.Int("layers_per_block");
    s.filters = fields.Int("filters");
    spec = s;
  } else {
    throw ParseError("spec record: unknown architecture '" + arch + "'");
  }
  fields.ExpectAllUsed();
  Validate(spec);
  return spec;
}

std::vector<uint8_t> SerializeModel(const TrainedModel& model) {
  Validate(model.spec);
  const auto names = ParameterNames(model.spec);
  const auto shapes = TensorShapes(model.spec);
  const auto tensors = model.params.Tensors();
  if (tensors.size() != names.size()) {
    throw ConfigError("model parameters do not match the spec layout");
  }
  internal::ByteWriter w;
  w.Raw(kMagic);
  w.U32(kModelFormatVersion);
  w.String(FormatSpecRecord(model.spec));
  w.U32(static_cast<uint32_t>(names.size()));
  for (size_t i = 0; i < names.size(); ++i) {
    w.String(names[i]);
    w.U32(static_cast<uint32_t>(shapes[i].size()));
    size_t count = 1;
    for (uint32_t d : shapes[i]) {
      w.U32(d);
      count *= d;
    }
    if (count != tensors[i].size()) {
      throw ConfigError("parameter '" + names[i] + "' has " +
                        std::to_string(tensors[i].size()) +
                        " values, its shape needs " + std::to_string(count));
    }
  }
  for (const auto& t : tensors) {
    for (float v : t) w.F32(v);
  }
  const auto& meta = model.metadata;
  w.U32(static_cast<uint32_t>(meta.epochs));
  w.U64(meta.seed);
  w.U32(static_cast<uint32_t>(meta.loss_curve.size()));
  for (double loss : meta.loss_curve) w.F64(loss);
  return std::move(w.bytes());
}

TrainedModel DeserializeModel(const std::vector<uint8_t>& bytes) {
  internal::ByteReader r(bytes.data(), bytes.size(), "model");
  if (r.Raw(std::min<size_t>(4, bytes.size()), "magic") != kMagic) {
    throw ParseError("model: byte 0: bad magic (expected \"TCNM\")");
  }
  const uint32_t version = r.U32("version");
  if (version != kModelFormatVersion) {
    r.Fail("unsupported format version " + std::to_string(version));
  }
  const size_t record_offset = r.offset();
  ModelSpec spec;
  try {
    spec = ParseSpecRecord(r.String("spec record"));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError("model: byte " + std::to_string(record_offset) +
                     ": invalid spec record: " + e.what());
  }
  TrainedModel model = Build<float>(spec, 0);
  const auto names = ParameterNames(spec);
  const auto shapes = TensorShapes(spec);
  const uint32_t count = r.U32("tensor count");
  if (count != names.size()) {
    r.Fail("manifest lists " + std::to_string(count) + " tensors, spec needs " +
           std::to_string(names.size()));
  }
  for (size_t i = 0; i < names.size(); ++i) {
    const std::string name = r.String("tensor name");
    if (name != names[i]) {
      r.Fail("tensor " + std::to_string(i) + " is '" + name + "', expected '" +
             names[i] + "'");
    }
    const uint32_t rank = r.U32("tensor rank");
    if (rank != shapes[i].size()) {
      r.Fail("tensor '" + name + "' has rank " + std::to_string(rank) +
             ", expected " + std::to_string(shapes[i].size()));
    }
    for (uint32_t k = 0; k < rank; ++k) {
      const uint32_t d = r.U32("tensor dim");
      if (d != shapes[i][k]) {
        r.Fail("tensor '" + name + "' dim " + std::to_string(k) + " is " +
               std::to_string(d) + ", expected " +
               std::to_string(shapes[i][k]));
      }
    }
  }
  for (auto& t : model.params.Tensors()) {
    for (float& v : t) v = r.F32("parameter blob");
  }
  auto& meta = model.metadata;
  meta.epochs = static_cast<int>(r.U32("epochs"));
  meta.seed = r.U64("seed");
  const uint32_t losses = r.U32("loss count");
  if (losses > r.remaining() / 8) r.Fail("truncated loss curve");
  meta.loss_curve.resize(losses);
  for (double& loss : meta.loss_curve) loss = r.F64("loss curve");
  r.ExpectEnd();
  return model;
}

void SaveModel(const TrainedModel& model, const std::filesystem::path& path) {
  const auto bytes = SerializeModel(model);
  internal::WriteFile(
      path, std::string_view(reinterpret_cast<const char*>(bytes.data()),
                             bytes.size()));
}

TrainedModel LoadModel(const std::filesystem::path& path) {
  const std::string contents = internal::ReadFile(path);
  try {
    return DeserializeModel(
        std::vector<uint8_t>(contents.begin(), contents.end()));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace tcn::models

// Copyright 2026 The tomobell Authors
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

#include "tomobell/state_file.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "tomobell/error.hpp"

namespace tomobell {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &msg) { throw Error(ErrorCode::ParseError, msg); }

double real_of(const json &v, const std::string &what) {
    if (!v.is_number()) fail(what + " must be a number");
    return v.get<double>();
}

Complex complex_of(const json &obj, const char *key) {
    if (!obj.contains(key)) fail(std::string("missing field '") + key + "'");
    const json &v = obj.at(key);
    if (v.is_number()) return {v.get<double>(), 0.0};
    if (!v.is_array() || v.size() != 2) fail(std::string(key) + " must be [re, im]");
    return {real_of(v[0], key), real_of(v[1], key)};
}

Mat4R matrix_of(const json &v) {
    std::vector<double> flat;
    if (!v.is_array()) fail("M must be an array");
    if (v.size() == 1 && v[0].is_array()) return matrix_of(v[0]);
    for (const auto &row : v) {
        if (row.is_array()) {
            if (row.size() != 4) fail("each row of M must have 4 entries");
            for (const auto &x : row) flat.push_back(real_of(x, "M entry"));
        } else {
            flat.push_back(real_of(row, "M entry"));
        }
    }
    if (flat.size() != 16) fail("M must have 16 entries");
    Mat4R m{};
    for (int i = 0; i < 16; ++i) m[i / 4][i % 4] = flat[i];
    return m;
}

Vec4R vector_of(const json &obj, const char *key) {
    Vec4R out{};
    if (!obj.contains(key)) return out;
    const json &v = obj.at(key);
    if (!v.is_array() || v.size() != 4) fail(std::string(key) + " must have 4 entries");
    for (int i = 0; i < 4; ++i) out[i] = real_of(v[i], key);
    return out;
}

DisplacementConvention convention_of(const json &obj) {
    if (!obj.contains("convention")) return DisplacementConvention::kPhysical;
    if (!obj.at("convention").is_string()) fail("convention must be a string");
    return parse_convention(obj.at("convention").get<std::string>());
}

}  // namespace

DisplacementConvention parse_convention(std::string_view name) {
    if (name == "physical") return DisplacementConvention::kPhysical;
    if (name == "swapped") return DisplacementConvention::kSwapped;
    fail("unknown convention '" + std::string(name) + "'");
}

std::unique_ptr<TomogramSource> parse_state(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error &e) {
        fail(std::string("state file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("type") || !doc.at("type").is_string()) {
        fail("state description needs a string field 'type'");
    }
    const std::string type = doc.at("type").get<std::string>();
    if (type == "cat") {
        return std::make_unique<CatSource>(CatState{complex_of(doc, "gamma1"), complex_of(doc, "gamma2")});
    }
    if (type == "coherent") {
        return std::make_unique<CoherentProductSource>(
            CoherentProduct{complex_of(doc, "gamma1"), complex_of(doc, "gamma2")});
    }
    if (type == "gaussian") {
        if (!doc.contains("M")) fail("missing field 'M'");
        return std::make_unique<GaussianSource>(GaussianSpec(matrix_of(doc.at("M")), vector_of(doc, "mean")),
                                                convention_of(doc));
    }
    if (type == "squeezed_example") {
        return std::make_unique<GaussianSource>(squeezed_example_spec(), convention_of(doc));
    }
    if (type == "gaussian_family") {
        if (!doc.contains("k") || !doc.contains("l")) fail("gaussian_family needs 'k' and 'l'");
        return std::make_unique<GaussianSource>(
            gaussian_purity_family(real_of(doc.at("k"), "k"), real_of(doc.at("l"), "l")),
            convention_of(doc));
    }
    fail("unknown state type '" + type + "'");
}

std::unique_ptr<TomogramSource> load_state_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) fail("cannot open state file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_state(ss.str());
}

}  // namespace tomobell

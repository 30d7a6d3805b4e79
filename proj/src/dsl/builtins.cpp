// Copyright 2026 The Forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "forge/dsl/builtins.hpp"

#include <fmt/format.h>

namespace forge::dsl {

namespace {

constexpr unsigned kScene = stage_bit(StageKind::scene);
constexpr unsigned kEntity = stage_bit(StageKind::entity);
constexpr unsigned kPixel = stage_bit(StageKind::pixel);

ParamSpec req(const char* n) { return {n, true}; }
ParamSpec opt(const char* n) { return {n, false}; }

}  // namespace

const std::vector<BuiltinSpec>& builtin_table() {
    static const std::vector<BuiltinSpec> table{
        {"count", kAllStages, {req("value")}, false, true},
        {"randomize_layout", kScene, {req("room"), opt("world"), opt("iterations")}, false, false},
        {"replace_model", kEntity, {req("id"), opt("k")}, false, false},
        {"replace_material", kEntity, {req("id")}, false, false},
        {"tune_temp", kEntity, {req("id"), opt("mode")}, false, false},
        {"tune_intensity", kEntity, {req("id"), opt("mode")}, false, false},
        {"set_attr", kEntity, {req("id"), req("name"), req("value")}, false, false},
        {"add_trajectory",
         kEntity,
         {req("initCamera"), req("id"), opt("fps"), opt("speed"), opt("height"), opt("collisionPadding"), opt("type"),
          opt("time"), opt("keypoints")},
         false,
         false},
        {"pick", kEntity, {req("type"), req("id")}, true, false},
        {"attach_distribution",
         kEntity,
         {req("id"), req("component"), opt("field"), req("kind"), opt("lo"), opt("hi"), opt("mean"), opt("sigma"),
          opt("values"), opt("weights"), opt("k")},
         false,
         false},
        {"sample_component", kEntity, {req("id"), req("component")}, false, false},
        {"sample_transform",
         kEntity,
         {req("id"), opt("field"), req("kind"), opt("lo"), opt("hi"), opt("mean"), opt("sigma")},
         false,
         false},
        {"gen_depth",
         kPixel,
         {req("noise"), opt("sigma"), opt("scale"), opt("p"), opt("sigma_disparity"), opt("sigma_shift")},
         false,
         false},
        {"remap_labels", kPixel, {req("mapping")}, false, false},
        {"load_images", kPixel, {req("name")}, false, false},
        {"save_files", kPixel, {req("view"), req("content"), opt("name")}, false, false},
        {"map_pixels", kPixel, {req("image"), req("expr")}, false, false},
    };
    return table;
}

const BuiltinSpec* find_builtin(std::string_view name) {
    for (const auto& b : builtin_table()) {
        if (b.name == name) return &b;
    }
    return nullptr;
}

std::optional<std::string> bind_arguments(const BuiltinSpec& spec, const std::vector<std::string>& args,
                                          bool receiver, Binding& out) {
    out.param_arg.assign(spec.params.size(), -1);
    out.extra.clear();
    std::size_t next = 0;
    if (receiver) {
        if (spec.params.empty()) return fmt::format("'{}' takes no arguments", spec.name);
        out.param_arg[next++] = kReceiverArg;
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (!args[i].empty()) continue;
        if (next >= spec.params.size()) {
            return fmt::format("'{}' takes at most {} positional arguments", spec.name, spec.params.size());
        }
        out.param_arg[next++] = static_cast<int>(i);
    }
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i].empty()) continue;
        bool matched = false;
        for (std::size_t p = 0; p < spec.params.size(); ++p) {
            if (spec.params[p].name != args[i]) continue;
            if (out.param_arg[p] != -1) {
                return fmt::format("argument '{}' of '{}' given more than once", args[i], spec.name);
            }
            out.param_arg[p] = static_cast<int>(i);
            matched = true;
        }
        if (!matched) {
            if (!spec.extra_named) return fmt::format("'{}' has no parameter named '{}'", spec.name, args[i]);
            for (int prev : out.extra) {
                if (args[static_cast<std::size_t>(prev)] == args[i]) {
                    return fmt::format("argument '{}' of '{}' given more than once", args[i], spec.name);
                }
            }
            out.extra.push_back(static_cast<int>(i));
        }
    }
    for (std::size_t p = 0; p < spec.params.size(); ++p) {
        if (spec.params[p].required && out.param_arg[p] == -1) {
            return fmt::format("'{}' is missing required argument '{}'", spec.name, spec.params[p].name);
        }
    }
    return std::nullopt;
}

}  // namespace forge::dsl

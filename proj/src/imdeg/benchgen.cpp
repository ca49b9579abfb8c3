// Copyright 2026 the imdeg authors. All rights reserved.
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

#include "imdeg/benchgen.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "imdeg/error.hpp"
#include "imdeg/hash.hpp"
#include "imdeg/metrics.hpp"
#include "imdeg/parallel.hpp"
#include "imdeg/rng.hpp"
#include "imdeg/taxonomy.hpp"

namespace imdeg {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Seeds every chain element of an assignment in place.
void seed_chain(std::vector<DegradationSpec>& chain, std::uint64_t global_seed,
                const std::string& image_id) {
  for (std::size_t pos = 0; pos < chain.size(); ++pos) {
    chain[pos].seed =
        assignment_seed(global_seed, image_id, chain[pos].backend, chain[pos].term,
                        chain[pos].severity, pos);
  }
}

json chain_to_json(const std::vector<DegradationSpec>& chain, const Taxonomy& taxonomy) {
  json arr = json::array();
  for (const DegradationSpec& spec : chain) {
    json step;
    step["backend"] = spec.backend;
    step["term"] = spec.term;
    step["severity"] = spec.severity;
    step["seed"] = spec.seed;
    const TaxonomyEntry& entry = taxonomy.lookup(spec.backend, spec.term);
    step["group"] = entry.group;
    step["cause"] = cause_set_code(entry.causes);
    step["effect"] = entry.effect.has_value() ? effect_code(*entry.effect) : "--";
    if (!entry.tv_subtype.empty()) step["tv_subtype"] = entry.tv_subtype;
    arr.push_back(std::move(step));
  }
  return arr;
}

}  // namespace

const char* protocol_name(Protocol protocol) {
  switch (protocol) {
    case Protocol::kRoundRobin: return "round_robin";
    case Protocol::kCartesian: return "cartesian";
    case Protocol::kChainFactorial: return "chain_factorial";
    case Protocol::kRandomChains: return "random_chains";
  }
  return "unknown";
}

Protocol parse_protocol(const std::string& text) {
  if (text == "round_robin" || text == "A") return Protocol::kRoundRobin;
  if (text == "cartesian" || text == "B") return Protocol::kCartesian;
  if (text == "chain_factorial" || text == "C") return Protocol::kChainFactorial;
  if (text == "random_chains" || text == "D") return Protocol::kRandomChains;
  throw_error(ErrorCode::kArgument, "unknown protocol: " + text);
}

std::uint64_t assignment_seed(std::uint64_t global_seed, const std::string& image_id,
                              const std::string& backend, const std::string& term,
                              int severity, std::size_t chain_pos) {
  std::uint64_t h = fnv1a64(image_id.data(), image_id.size());
  h = fnv1a64(backend.data(), backend.size(), h);
  h = fnv1a64(term.data(), term.size(), h);
  h = derive_stream_id_u64(h, global_seed);
  h = derive_stream_id_u64(h, static_cast<std::uint64_t>(severity));
  return derive_stream_id_u64(h, static_cast<std::uint64_t>(chain_pos));
}

GenerationPlan plan_round_robin(const std::vector<std::string>& image_ids,
                                const std::vector<OperatorKey>& operators, std::uint64_t seed) {
  if (operators.empty()) throw_error(ErrorCode::kArgument, "plan needs at least one operator");
  GenerationPlan plan;
  plan.protocol = Protocol::kRoundRobin;
  plan.seed = seed;
  plan.assignments.reserve(image_ids.size());
  std::size_t combinations = operators.size() * kSeverityLevels;
  for (std::size_t i = 0; i < image_ids.size(); ++i) {
    std::size_t ci = i % combinations;
    const OperatorKey& op = operators[ci / kSeverityLevels];
    int level = static_cast<int>(ci % kSeverityLevels) + 1;
    PlanAssignment a;
    a.image_id = image_ids[i];
    a.chain.push_back(DegradationSpec{op.first, op.second, level, 0});
    seed_chain(a.chain, seed, a.image_id);
    plan.assignments.push_back(std::move(a));
  }
  return plan;
}

GenerationPlan plan_cartesian(const std::vector<std::string>& image_ids,
                              const std::vector<OperatorKey>& operators, std::uint64_t seed) {
  if (operators.empty()) throw_error(ErrorCode::kArgument, "plan needs at least one operator");
  GenerationPlan plan;
  plan.protocol = Protocol::kCartesian;
  plan.seed = seed;
  plan.assignments.reserve(image_ids.size() * operators.size() * kSeverityLevels);
  for (const std::string& id : image_ids) {
    for (const OperatorKey& op : operators) {
      for (int level = 1; level <= kSeverityLevels; ++level) {
        PlanAssignment a;
        a.image_id = id;
        a.chain.push_back(DegradationSpec{op.first, op.second, level, 0});
        seed_chain(a.chain, seed, a.image_id);
        plan.assignments.push_back(std::move(a));
      }
    }
  }
  return plan;
}

GenerationPlan plan_chain_factorial(const std::vector<std::string>& image_ids,
                                    const std::vector<OperatorKey>& chain_template,
                                    std::uint64_t seed) {
  if (chain_template.empty()) {
    throw_error(ErrorCode::kArgument, "chain template needs at least one operator");
  }
  GenerationPlan plan;
  plan.protocol = Protocol::kChainFactorial;
  plan.seed = seed;
  std::size_t combos = 1;
  for (std::size_t i = 0; i < chain_template.size(); ++i) combos *= kSeverityLevels;
  plan.assignments.reserve(image_ids.size() * combos);
  std::vector<int> levels(chain_template.size(), 1);
  for (const std::string& id : image_ids) {
    std::fill(levels.begin(), levels.end(), 1);
    for (std::size_t c = 0; c < combos; ++c) {
      PlanAssignment a;
      a.image_id = id;
      for (std::size_t slot = 0; slot < chain_template.size(); ++slot) {
        a.chain.push_back(DegradationSpec{chain_template[slot].first,
                                          chain_template[slot].second, levels[slot], 0});
      }
      seed_chain(a.chain, seed, a.image_id);
      plan.assignments.push_back(std::move(a));
      // Odometer increment, last slot fastest.
      for (std::size_t slot = chain_template.size(); slot-- > 0;) {
        if (++levels[slot] <= kSeverityLevels) break;
        levels[slot] = 1;
      }
    }
  }
  return plan;
}

GenerationPlan plan_random_chains(const DegradationEngine& engine,
                                  const std::vector<std::string>& image_ids, int chain_length,
                                  std::uint64_t seed) {
  if (chain_length < 1) throw_error(ErrorCode::kArgument, "chain length must be positive");
  // Pool: canonical groups that contain at least one runnable operator,
  // each with its runnable operators in registry order.
  std::map<std::string, std::vector<OperatorKey>> by_group;
  for (const OperatorDescriptor& d : engine.list_all_operators()) {
    if (!d.available) continue;
    by_group[engine.taxonomy().lookup(d.backend, d.term).group].push_back({d.backend, d.term});
  }
  std::vector<std::string> group_ids;
  group_ids.reserve(by_group.size());
  for (const auto& [gid, ops] : by_group) group_ids.push_back(gid);
  if (static_cast<std::size_t>(chain_length) > group_ids.size()) {
    throw_error(ErrorCode::kArgument,
                "chain length " + std::to_string(chain_length) + " exceeds the " +
                    std::to_string(group_ids.size()) + " groups with runnable operators");
  }

  GenerationPlan plan;
  plan.protocol = Protocol::kRandomChains;
  plan.seed = seed;
  plan.assignments.reserve(image_ids.size());
  static const char kContext[] = "plan:random_chains";
  RngStream rng(seed, derive_stream_id(kContext, sizeof(kContext) - 1));
  for (const std::string& id : image_ids) {
    // Partial Fisher-Yates: the first chain_length slots become a uniform
    // draw of distinct groups.
    std::vector<std::string> pool = group_ids;
    PlanAssignment a;
    a.image_id = id;
    for (int k = 0; k < chain_length; ++k) {
      std::size_t j = static_cast<std::size_t>(
          rng.uniform_int(k, static_cast<std::int64_t>(pool.size()) - 1));
      std::swap(pool[k], pool[j]);
      const std::vector<OperatorKey>& ops = by_group[pool[k]];
      const OperatorKey& op =
          ops[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(ops.size()) - 1))];
      int level = static_cast<int>(rng.uniform_int(1, kSeverityLevels));
      a.chain.push_back(DegradationSpec{op.first, op.second, level, 0});
    }
    seed_chain(a.chain, seed, a.image_id);
    plan.assignments.push_back(std::move(a));
  }
  return plan;
}

std::string output_stem(const PlanAssignment& assignment) {
  std::string stem = assignment.image_id;
  for (std::size_t pos = 0; pos < assignment.chain.size(); ++pos) {
    const DegradationSpec& spec = assignment.chain[pos];
    stem += "_" + spec.backend + "_" + spec.term + "_s" + std::to_string(spec.severity);
    if (assignment.chain.size() > 1) stem += "_c" + std::to_string(pos);
  }
  return stem;
}

std::vector<std::pair<std::string, std::string>> list_input_images(const std::string& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw_error(ErrorCode::kIo, "input directory does not exist: " + dir);
  }
  std::vector<std::pair<std::string, std::string>> images;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    std::string ext = entry.path().extension().string();
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext != ".png" && ext != ".jpg" && ext != ".jpeg") continue;
    images.emplace_back(entry.path().stem().string(), entry.path().string());
  }
  std::sort(images.begin(), images.end());
  for (std::size_t i = 1; i < images.size(); ++i) {
    if (images[i].first == images[i - 1].first) {
      throw_error(ErrorCode::kFormat, "duplicate image id in input directory: " +
                                          images[i].first);
    }
  }
  return images;
}

ExecSummary execute_plan(const DegradationEngine& engine, const GenerationPlan& plan,
                         const ExecOptions& options) {
  if (options.format != "png" && options.format != "jpeg") {
    throw_error(ErrorCode::kArgument, "unknown output format: " + options.format);
  }
  std::map<std::string, std::string> sources;
  for (auto& [id, path] : list_input_images(options.input_dir)) sources[id] = path;

  fs::path out_dir(options.output_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw_error(ErrorCode::kIo, "cannot create output directory: " + options.output_dir);

  const std::string ext = options.format == "png" ? ".png" : ".jpg";
  const Taxonomy& taxonomy = engine.taxonomy();

  // Each assignment produces one serialized manifest record into its own
  // slot; nothing below depends on completion order.
  struct Slot {
    std::string output;  // relative output path (sort key)
    std::string record;  // serialized JSON line
    bool ok = false;
  };
  std::vector<Slot> slots(plan.assignments.size());

  parallel_for(plan.assignments.size(), options.jobs, [&](std::size_t i) {
    const PlanAssignment& a = plan.assignments[i];
    Slot& slot = slots[i];
    slot.output = output_stem(a) + ext;

    json rec;
    rec["type"] = "record";
    rec["image_id"] = a.image_id;
    rec["output"] = slot.output;
    rec["chain"] = chain_to_json(a.chain, taxonomy);
    try {
      auto src = sources.find(a.image_id);
      if (src == sources.end()) {
        throw_error(ErrorCode::kNotFound, "no input image with id: " + a.image_id);
      }
      Image reference = load_image(src->second);
      Image degraded = engine.apply_chain(reference, a.chain);
      fs::path out_path = out_dir / slot.output;
      if (options.format == "png") {
        save_png(degraded, out_path.string());
      } else {
        save_jpeg(degraded, out_path.string(), options.jpeg_quality);
      }
      if (options.measure) {
        json strengths;
        strengths["psnr"] = psnr(reference, degraded);
        try {
          strengths["one_minus_ssim"] = one_minus_ssim(reference, degraded);
        } catch (const Error&) {
          // Images below the structural window size simply lack this reading.
        }
        rec["strengths"] = std::move(strengths);
      }
      rec["status"] = "ok";
      slot.ok = true;
    } catch (const Error& e) {
      rec["status"] = "failed";
      rec["error"] = e.what();
      rec["error_code"] = error_code_name(e.code());
    }
    slot.record = rec.dump();
  });

  std::sort(slots.begin(), slots.end(),
            [](const Slot& a, const Slot& b) { return a.output < b.output; });

  json header;
  header["type"] = "header";
  header["version"] = "imdeg-manifest-v1";
  header["protocol"] = protocol_name(plan.protocol);
  header["seed"] = plan.seed;
  header["schedule_hash"] = engine.schedules().content_hash();
  header["codecs"] = {{"png", png_codec_version()}, {"jpeg", jpeg_codec_version()}};
  header["format"] = options.format;
  if (options.format == "jpeg") header["jpeg_quality"] = options.jpeg_quality;
  header["records"] = slots.size();

  fs::path manifest_path = out_dir / "manifest.jsonl";
  std::ofstream manifest(manifest_path, std::ios::binary);
  if (!manifest) {
    throw_error(ErrorCode::kIo, "cannot open manifest for writing: " + manifest_path.string());
  }
  manifest << header.dump() << "\n";
  for (const Slot& slot : slots) manifest << slot.record << "\n";
  manifest.flush();
  if (!manifest) throw_error(ErrorCode::kIo, "manifest write failed: " + manifest_path.string());

  ExecSummary summary;
  summary.total = slots.size();
  for (const Slot& slot : slots) (slot.ok ? summary.ok : summary.failed) += 1;
  summary.manifest_path = manifest_path.string();
  return summary;
}

}  // namespace imdeg

// Copyright 2026 The InfoLaw Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "infolaw/pack.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "infolaw/parallel.hpp"
#include "infolaw/rng.hpp"

namespace infolaw {
namespace {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int size = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &size, EVP_sha256(), nullptr) != 1) {
    fail(ErrorCode::kIo, "SHA-256 digest failed");
  }
  std::string hex;
  hex.reserve(2 * size);
  char buf[3];
  for (unsigned int i = 0; i < size; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

std::string exact(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

}  // namespace

CorpusSpec<double> BucketedCorpus::spec() const {
  BucketArrayd shares;
  for (int d = 0; d < kNumBuckets; ++d) {
    shares[d] = static_cast<double>(tokens[d]) / static_cast<double>(total_tokens);
  }
  return CorpusSpec<double>(static_cast<double>(total_tokens), shares);
}

BucketedCorpus assign_buckets(std::vector<ScoredDocument> docs,
                              const BucketArrayd& proportions) {
  if (docs.empty()) fail(ErrorCode::kInvalidInput, "no documents to bucket");
  if ((proportions < 0).any() || std::abs(proportions.sum() - 1) > kSimplexTolerance) {
    fail(ErrorCode::kInvalidInput, "bucket proportions must be a simplex point");
  }
  std::unordered_set<std::string_view> ids;
  std::uint64_t total = 0;
  for (const ScoredDocument& doc : docs) {
    if (!std::isfinite(doc.quality_score)) {
      fail(ErrorCode::kInvalidInput, "document " + doc.id + " has a non-finite score");
    }
    if (doc.n_tokens < 1) fail(ErrorCode::kInvalidInput, "document " + doc.id + " has no tokens");
    if (!ids.insert(doc.id).second) fail(ErrorCode::kInvalidInput, "duplicate document id " + doc.id);
    total += doc.n_tokens;
  }

  std::vector<std::size_t> rank(docs.size());
  std::iota(rank.begin(), rank.end(), std::size_t{0});
  std::sort(rank.begin(), rank.end(), [&](std::size_t a, std::size_t b) {
    if (docs[a].quality_score != docs[b].quality_score) {
      return docs[a].quality_score > docs[b].quality_score;
    }
    if (docs[a].id != docs[b].id) return docs[a].id < docs[b].id;
    return a < b;
  });

  std::array<std::uint64_t, kNumBuckets> bound{};
  double cumulative = 0;
  for (int d = 0; d < kNumBuckets; ++d) {
    cumulative += proportions[d];
    bound[d] = d == kNumBuckets - 1
                   ? total
                   : static_cast<std::uint64_t>(std::llround(cumulative * static_cast<double>(total)));
  }

  BucketedCorpus out;
  out.bucket.assign(docs.size(), 0);
  out.total_tokens = total;
  std::uint64_t start = 0;
  int d = 0;
  for (std::size_t i : rank) {
    const std::uint64_t twice_mid = 2 * start + docs[i].n_tokens;
    while (d < kNumBuckets - 1 && twice_mid >= 2 * bound[d]) ++d;
    out.bucket[i] = d;
    out.tokens[d] += docs[i].n_tokens;
    start += docs[i].n_tokens;
  }
  for (std::size_t i = 0; i < docs.size(); ++i) out.members[out.bucket[i]].push_back(i);
  out.docs = std::move(docs);
  return out;
}

PackPlan plan_pack(const MixtureRecipe<double>& recipe, double train_tokens,
                   const CorpusSpec<double>& corpus) {
  if (!(train_tokens > 0)) fail(ErrorCode::kInvalidInput, "K must be positive");
  PackPlan plan{recipe, train_tokens, recipe.weights() * train_tokens, corpus.bucket_tokens(),
                BucketArrayd::Zero(), layermix_stats(recipe, train_tokens, corpus)};
  for (int d = 0; d < kNumBuckets; ++d) {
    if (plan.needed[d] > 0 && !(plan.source[d] > 0)) {
      fail(ErrorCode::kImpossiblePlan,
           "bucket " + std::to_string(d) + " has weight but no source tokens");
    }
    plan.ratio[d] = plan.needed[d] > 0 ? plan.needed[d] / plan.source[d] : 0.0;
  }
  return plan;
}

PackPlan plan_pack(const MixtureRecipe<double>& recipe, double train_tokens,
                   const BucketedCorpus& corpus) {
  for (int d = 0; d < kNumBuckets; ++d) {
    if (corpus.tokens[d] == 0 && recipe[d] > 0) {
      fail(ErrorCode::kImpossiblePlan,
           "bucket " + std::to_string(d) + " has weight but no documents");
    }
  }
  if (std::any_of(corpus.tokens.begin(), corpus.tokens.end() - 1,
                  [](std::uint64_t t) { return t == 0; })) {
    fail(ErrorCode::kInvalidInput, "corpus too small: a quality bucket is empty");
  }
  return plan_pack(recipe, train_tokens, corpus.spec());
}

PackResult pack(const BucketedCorpus& corpus, const PackPlan& plan, std::uint64_t seed,
                std::size_t workers) {
  for (int d = 0; d < kNumBuckets; ++d) {
    const double expected = static_cast<double>(corpus.tokens[d]);
    if (std::abs(plan.source[d] - expected) > 1e-9 * std::max(1.0, expected)) {
      fail(ErrorCode::kInvalidInput, "plan source tokens do not match the corpus");
    }
  }
  PackResult result;
  result.copies.assign(corpus.docs.size(), 0);
  parallel_for(corpus.docs.size(), workers, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const int d = corpus.bucket[i];
      const double ratio = plan.ratio[d];
      const double whole = std::floor(ratio);
      const double frac = ratio - whole;
      auto copies = static_cast<std::uint32_t>(whole);
      if (frac > 0) {
        CounterRng rng(seed, static_cast<std::uint32_t>(RngDomain::kPackBase) + d,
                       fnv1a64(corpus.docs[i].id));
        if (rng.uniform() < frac) ++copies;
      }
      result.copies[i] = copies;
    }
  });

  PackManifest& m = result.manifest;
  m.seed = seed;
  m.train_tokens = plan.train_tokens;
  m.recipe = plan.recipe.weights();
  m.corpus_digest = corpus_digest(corpus);
  m.plan_digest = plan_digest(plan);
  for (int d = 0; d < kNumBuckets; ++d) {
    BucketManifest& b = m.buckets[d];
    b.target = plan.needed[d];
    b.source = corpus.tokens[d];
    b.documents = corpus.members[d].size();
    b.planned_unique = plan.predicted.unique[d];
    b.planned_repetition = plan.predicted.repetition[d];
    for (std::size_t i : corpus.members[d]) {
      const std::uint64_t n = corpus.docs[i].n_tokens;
      const std::uint32_t c = result.copies[i];
      b.realized += c * n;
      if (c > 0) b.realized_unique += n;
      ++b.copy_histogram[c];
    }
    b.realized_repetition =
        b.realized_unique > 0 ? static_cast<double>(b.realized) / static_cast<double>(b.realized_unique)
                              : 1.0;
    m.total_tokens += b.realized;
  }
  return result;
}

void for_each_copy(const BucketedCorpus& corpus, const PackResult& result,
                   const std::function<void(const ScoredDocument&, std::uint32_t)>& emit) {
  for (int d = 0; d < kNumBuckets; ++d) {
    for (std::size_t i : corpus.members[d]) {
      for (std::uint32_t c = 0; c < result.copies[i]; ++c) emit(corpus.docs[i], c);
    }
  }
}

std::string corpus_digest(const BucketedCorpus& corpus) {
  std::string text;
  for (std::size_t i = 0; i < corpus.docs.size(); ++i) {
    const ScoredDocument& doc = corpus.docs[i];
    text += doc.id;
    text += '\t' + std::to_string(doc.n_tokens) + '\t' + exact(doc.quality_score) + '\t' +
            std::to_string(corpus.bucket[i]) + '\n';
  }
  return sha256_hex(text);
}

std::string plan_digest(const PackPlan& plan) {
  std::string text = "K " + exact(plan.train_tokens) + '\n';
  for (int d = 0; d < kNumBuckets; ++d) {
    text += exact(plan.recipe[d]) + ' ' + exact(plan.needed[d]) + ' ' + exact(plan.source[d]) +
            ' ' + exact(plan.ratio[d]) + '\n';
  }
  return sha256_hex(text);
}

IngestResult ingest_jsonl(std::istream& in, const IngestOptions& options) {
  IngestResult result;
  std::string line;
  std::size_t number = 0;
  auto reject = [&](const std::string& why) {
    ++result.malformed;
    result.warnings.push_back("line " + std::to_string(number) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++number;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++result.lines;
    const nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
      reject("not a JSON object");
      continue;
    }
    ScoredDocument doc;
    const auto id = obj.find(options.id_key);
    if (id == obj.end() || !(id->is_string() || id->is_number_integer())) {
      reject("missing or invalid '" + options.id_key + "'");
      continue;
    }
    doc.id = id->is_string() ? id->get<std::string>() : id->dump();
    const auto score = obj.find(options.score_key);
    if (score == obj.end() || !score->is_number() || !std::isfinite(score->get<double>())) {
      reject("missing or invalid '" + options.score_key + "'");
      continue;
    }
    doc.quality_score = score->get<double>();
    const auto tokens = obj.find(options.tokens_key);
    const auto text = obj.find(options.text_key);
    if (tokens != obj.end()) {
      if (!tokens->is_number_unsigned() || tokens->get<std::uint64_t>() < 1) {
        reject("'" + options.tokens_key + "' must be a positive integer");
        continue;
      }
      doc.n_tokens = tokens->get<std::uint64_t>();
    } else if (options.token_counter && text != obj.end() && text->is_string()) {
      doc.n_tokens = options.token_counter(text->get_ref<const std::string&>());
      if (doc.n_tokens < 1) {
        reject("text has no tokens");
        continue;
      }
    } else {
      reject("missing '" + options.tokens_key + "'");
      continue;
    }
    if (options.keep_payload) doc.payload = line;
    result.docs.push_back(std::move(doc));
  }
  if (in.bad()) fail(ErrorCode::kIo, "read error while ingesting documents");
  if (result.lines > 0 &&
      static_cast<double>(result.malformed) >
          options.max_malformed_fraction * static_cast<double>(result.lines)) {
    fail(ErrorCode::kInvalidInput,
         std::to_string(result.malformed) + " of " + std::to_string(result.lines) +
             " lines are malformed");
  }
  return result;
}

IngestResult ingest_jsonl(const std::string& path, const IngestOptions& options) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kIo, "cannot open " + path);
  return ingest_jsonl(in, options);
}

}  // namespace infolaw

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

// Corpus packing: bucket documents by quality percentile, then copy each
// document floor(ratio) times plus one Bernoulli(frac(ratio)) extra copy.

#ifndef INFOLAW_PACK_HPP_
#define INFOLAW_PACK_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "infolaw/core.hpp"

namespace infolaw {

struct ScoredDocument {
  std::string id;
  std::uint64_t n_tokens = 0;
  double quality_score = 0;
  std::optional<std::string> payload;  // raw JSON, passed through untouched
};

struct BucketedCorpus {
  std::vector<ScoredDocument> docs;                  // input order
  std::vector<int> bucket;                           // per doc
  std::array<std::vector<std::size_t>, kNumBuckets> members;  // input order
  std::array<std::uint64_t, kNumBuckets> tokens{};   // S_d
  std::uint64_t total_tokens = 0;                    // S

  // (S, S_d / S). Fails if one of the first five buckets is empty.
  CorpusSpec<double> spec() const;
};

// Ranks by score descending, then id, then input position, and cuts the
// token-weighted ranking at round(S * cumulative B). A document belongs to
// the bucket containing the midpoint of its token span. Ids must be unique.
BucketedCorpus assign_buckets(std::vector<ScoredDocument> docs,
                              const BucketArrayd& proportions);

struct PackPlan {
  MixtureRecipe<double> recipe;
  double train_tokens;
  BucketArrayd needed;  // K w_d
  BucketArrayd source;  // S_d
  BucketArrayd ratio;   // needed / source, 0 for unused empty buckets
  BucketStats<double> predicted;
};

PackPlan plan_pack(const MixtureRecipe<double>& recipe, double train_tokens,
                   const CorpusSpec<double>& corpus);
// Plans against the realized bucket sizes of corpus.
PackPlan plan_pack(const MixtureRecipe<double>& recipe, double train_tokens,
                   const BucketedCorpus& corpus);

struct BucketManifest {
  double target = 0;               // K_d
  std::uint64_t source = 0;        // S_d
  std::uint64_t documents = 0;
  std::uint64_t realized = 0;      // tokens over all emitted copies
  double planned_unique = 0;       // min(K_d, S_d)
  std::uint64_t realized_unique = 0;  // tokens of documents emitted at least once
  double planned_repetition = 1;
  double realized_repetition = 1;
  std::map<std::uint64_t, std::uint64_t> copy_histogram;  // copies -> documents
  friend bool operator==(const BucketManifest&, const BucketManifest&) = default;
};

struct PackManifest {
  std::uint64_t seed = 0;
  double train_tokens = 0;
  BucketArrayd recipe = BucketArrayd::Zero();
  std::uint64_t total_tokens = 0;  // realized
  std::string corpus_digest;      // SHA-256 hex
  std::string plan_digest;        // SHA-256 hex
  std::array<BucketManifest, kNumBuckets> buckets;
  friend bool operator==(const PackManifest& a, const PackManifest& b) {
    return a.seed == b.seed && a.train_tokens == b.train_tokens &&
           (a.recipe == b.recipe).all() && a.total_tokens == b.total_tokens &&
           a.corpus_digest == b.corpus_digest && a.plan_digest == b.plan_digest &&
           a.buckets == b.buckets;
  }
};

struct PackResult {
  std::vector<std::uint32_t> copies;  // per document, aligned with corpus.docs
  PackManifest manifest;
};

// The extra copy of a document in bucket d is decided by the first uniform
// of the stream (seed, bucket d, FNV-1a of its id).
PackResult pack(const BucketedCorpus& corpus, const PackPlan& plan, std::uint64_t seed,
                std::size_t workers = 1);

// Emission order: bucket-major, input order within a bucket, copies adjacent.
void for_each_copy(const BucketedCorpus& corpus, const PackResult& result,
                   const std::function<void(const ScoredDocument&, std::uint32_t copy)>& emit);

std::string corpus_digest(const BucketedCorpus& corpus);
std::string plan_digest(const PackPlan& plan);

struct IngestOptions {
  std::string id_key = "id";
  std::string tokens_key = "n_tokens";
  std::string score_key = "quality_score";
  std::string text_key = "text";
  // Abort when more than this fraction of nonblank lines is malformed.
  double max_malformed_fraction = 0.01;
  bool keep_payload = false;
  // Used for lines without a token count but with text.
  std::function<std::uint64_t(std::string_view)> token_counter;
};

struct IngestResult {
  std::vector<ScoredDocument> docs;
  std::size_t lines = 0;  // nonblank
  std::size_t malformed = 0;
  std::vector<std::string> warnings;
};

IngestResult ingest_jsonl(std::istream& in, const IngestOptions& options);
IngestResult ingest_jsonl(const std::string& path, const IngestOptions& options);

}  // namespace infolaw

#endif  // INFOLAW_PACK_HPP_

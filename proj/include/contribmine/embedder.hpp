#pragma once
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace contribmine {

struct EmbeddingVector {
    std::vector<double> values;

    std::size_t dim() const { return values.size(); }
};

// All entries finite, norm 1 afterwards; throws embed_error(zero_vector) on a
// zero input.
EmbeddingVector normalize(EmbeddingVector v);

double l2_norm(const EmbeddingVector& v);

// Standard cosine similarity; throws on dimension mismatch or zero vectors.
double cosine(const EmbeddingVector& u, const EmbeddingVector& v);

// A sentence-embedding backend. Implementations are read-only after
// construction and callable from any thread.
class EmbeddingProvider {
public:
    virtual ~EmbeddingProvider() = default;
    virtual std::size_t dim() const = 0;
    // Deterministic for a fixed backend + config; throws embed_error on empty
    // input or (for lookup backends) unknown text.
    virtual EmbeddingVector embed(std::string_view text) const = 0;
};

inline constexpr std::size_t kLexicalDim = 32768;
inline constexpr std::uint64_t kLexicalDefaultSeed = 0x5eed5eed5eed5eedULL;

// Deterministic lexical backend: lowercase the text, take overlapping
// character trigrams of the boundary-padded text ('^' front, '$' back), hash
// each trigram with seeded 64-bit FNV-1a into 32768 buckets, count, and
// L2-normalize. Bit-identical across platforms for the same seed.
class LexicalEmbedder : public EmbeddingProvider {
public:
    explicit LexicalEmbedder(std::uint64_t seed = kLexicalDefaultSeed) : seed_(seed) {}
    std::size_t dim() const override { return kLexicalDim; }
    EmbeddingVector embed(std::string_view text) const override;

    // Bucket index of one trigram under this seed (exposed for tests).
    std::size_t bucket(std::string_view trigram) const;

private:
    std::uint64_t seed_;
};

// Exact-lookup backend over a precomputed vector file. Misses raise
// embed_error(provider_unavailable) naming the text.
class VectorFileEmbedder : public EmbeddingProvider {
public:
    std::size_t dim() const override { return dim_; }
    EmbeddingVector embed(std::string_view text) const override;

    friend std::unique_ptr<VectorFileEmbedder> load_vectors(const std::filesystem::path& path);

private:
    std::size_t dim_ = 0;
    std::unordered_map<std::string, EmbeddingVector> table_;
};

// Loads a vector file: binary ("CTRBVEC1" magic, dim, count, then
// length-prefixed UTF-8 text + dim float64 values per record) or a JSON
// object mapping text to arrays. Mixed dimensions are a fatal load error.
std::unique_ptr<VectorFileEmbedder> load_vectors(const std::filesystem::path& path);

// Writes the binary vector-file format consumed by load_vectors.
void write_vectors(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, EmbeddingVector>>& entries);

} // namespace contribmine

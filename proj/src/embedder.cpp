#include "contribmine/embedder.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "contribmine/errors.hpp"

namespace contribmine {

namespace {

constexpr std::uint64_t kFnvOffset = 14695981039346656037ULL;
constexpr std::uint64_t kFnvPrime = 1099511628211ULL;

std::uint64_t fnv1a_seeded(std::string_view bytes, std::uint64_t seed) {
    std::uint64_t h = kFnvOffset ^ seed;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= kFnvPrime;
    }
    return h;
}

char ascii_lower(char c) {
    return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

} // namespace

double l2_norm(const EmbeddingVector& v) {
    double s = 0.0;
    for (double x : v.values) s += x * x;
    return std::sqrt(s);
}

EmbeddingVector normalize(EmbeddingVector v) {
    double n = l2_norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw embed_error(embed_error::code::zero_vector, "cannot normalize a zero vector");
    }
    for (double& x : v.values) x /= n;
    return v;
}

double cosine(const EmbeddingVector& u, const EmbeddingVector& v) {
    if (u.dim() != v.dim()) {
        throw embed_error(embed_error::code::dimension_mismatch,
                          "cosine: dim " + std::to_string(u.dim()) + " vs " + std::to_string(v.dim()));
    }
    double dot = 0.0, nu = 0.0, nv = 0.0;
    for (std::size_t i = 0; i < u.values.size(); i++) {
        dot += u.values[i] * v.values[i];
        nu += u.values[i] * u.values[i];
        nv += v.values[i] * v.values[i];
    }
    if (!(nu > 0.0) || !(nv > 0.0)) {
        throw embed_error(embed_error::code::zero_vector, "cosine: zero vector operand");
    }
    return dot / (std::sqrt(nu) * std::sqrt(nv));
}

std::size_t LexicalEmbedder::bucket(std::string_view trigram) const {
    return static_cast<std::size_t>(fnv1a_seeded(trigram, seed_) % kLexicalDim);
}

EmbeddingVector LexicalEmbedder::embed(std::string_view text) const {
    if (text.empty()) {
        throw embed_error(embed_error::code::empty_input, "embed: empty input");
    }
    std::string padded;
    padded.reserve(text.size() + 2);
    padded.push_back('^');
    for (char c : text) padded.push_back(ascii_lower(c));
    padded.push_back('$');

    EmbeddingVector v;
    v.values.assign(kLexicalDim, 0.0);
    for (std::size_t i = 0; i + 3 <= padded.size(); i++) {
        v.values[bucket(std::string_view(padded).substr(i, 3))] += 1.0;
    }
    return normalize(std::move(v));
}

EmbeddingVector VectorFileEmbedder::embed(std::string_view text) const {
    auto it = table_.find(std::string(text));
    if (it == table_.end()) {
        throw embed_error(embed_error::code::provider_unavailable,
                          "no stored vector for text: " + std::string(text));
    }
    return it->second;
}

namespace {

constexpr char kVectorMagic[8] = {'C', 'T', 'R', 'B', 'V', 'E', 'C', '1'};

} // namespace

std::unique_ptr<VectorFileEmbedder> load_vectors(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open vector file: " + path.string());
    char magic[8] = {};
    in.read(magic, 8);
    if (!in || std::memcmp(magic, kVectorMagic, 8) != 0) {
        // Fall back to the JSON form: an object mapping text to arrays.
        std::ifstream jin(path);
        nlohmann::json obj = nlohmann::json::parse(jin, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            throw config_error("vector file is neither binary nor a JSON object: " + path.string());
        }
        auto provider = std::make_unique<VectorFileEmbedder>();
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (!it.value().is_array()) {
                throw config_error("vector file entry is not an array: " + it.key());
            }
            EmbeddingVector v;
            v.values = it.value().get<std::vector<double>>();
            if (provider->dim_ == 0) provider->dim_ = v.dim();
            if (v.dim() != provider->dim_ || v.dim() == 0) {
                throw config_error("vector file mixes dimensions (" + std::to_string(provider->dim_) +
                                   " vs " + std::to_string(v.dim()) + ")");
            }
            provider->table_.emplace(it.key(), std::move(v));
        }
        return provider;
    }

    std::uint32_t dim = 0;
    std::uint64_t count = 0;
    in.read(reinterpret_cast<char*>(&dim), sizeof dim);
    in.read(reinterpret_cast<char*>(&count), sizeof count);
    if (!in || dim == 0) throw config_error("bad vector file header: " + path.string());

    auto provider = std::make_unique<VectorFileEmbedder>();
    provider->dim_ = dim;
    for (std::uint64_t r = 0; r < count; r++) {
        std::uint32_t len = 0;
        in.read(reinterpret_cast<char*>(&len), sizeof len);
        std::string text(len, '\0');
        in.read(text.data(), len);
        EmbeddingVector v;
        v.values.resize(dim);
        in.read(reinterpret_cast<char*>(v.values.data()), static_cast<std::streamsize>(dim * sizeof(double)));
        if (!in) throw config_error("truncated vector file: " + path.string());
        provider->table_.emplace(std::move(text), std::move(v));
    }
    return provider;
}

void write_vectors(const std::filesystem::path& path,
                   const std::vector<std::pair<std::string, EmbeddingVector>>& entries) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot open vector file for writing: " + path.string());
    out.write(kVectorMagic, 8);
    std::uint32_t dim = entries.empty() ? 0 : static_cast<std::uint32_t>(entries.front().second.dim());
    std::uint64_t count = entries.size();
    out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
    out.write(reinterpret_cast<const char*>(&count), sizeof count);
    for (const auto& [text, v] : entries) {
        auto len = static_cast<std::uint32_t>(text.size());
        out.write(reinterpret_cast<const char*>(&len), sizeof len);
        out.write(text.data(), len);
        out.write(reinterpret_cast<const char*>(v.values.data()),
                  static_cast<std::streamsize>(v.dim() * sizeof(double)));
    }
    if (!out) throw io_error("write failed: " + path.string());
}

} // namespace contribmine

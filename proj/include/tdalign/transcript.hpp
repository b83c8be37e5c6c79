#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "text.hpp"

namespace tdalign {

using SpeakerId = std::string;

enum class Role { reference, hypothesis };

inline std::string_view to_string(Role role) {
    return role == Role::reference ? "reference" : "hypothesis";
}

struct Token {
    std::string surface;
    std::string normalized;  // empty when the token is dropped
    std::size_t utterance_index = 0;
    std::size_t token_index = 0;

    bool dropped() const noexcept { return normalized.empty(); }
};

struct Utterance {
    SpeakerId speaker;
    std::vector<Token> tokens;
    std::optional<std::int64_t> start_ms;
    std::optional<std::int64_t> end_ms;
    std::optional<bool> overlap;

    bool overlapped() const noexcept { return overlap.value_or(false); }

    // Number of tokens that take part in alignment.
    std::size_t length() const noexcept {
        std::size_t n = 0;
        for (const auto& t : tokens)
            n += t.dropped() ? 0 : 1;
        return n;
    }

    bool timed() const noexcept { return start_ms.has_value() && end_ms.has_value(); }
};

struct Transcript {
    Role role = Role::reference;
    std::vector<SpeakerId> speakers;
    std::vector<Utterance> utterances;

    std::optional<std::size_t> speaker_index(std::string_view label) const {
        for (std::size_t i = 0; i < speakers.size(); ++i)
            if (speakers[i] == label)
                return i;
        return std::nullopt;
    }

    std::size_t token_count() const noexcept {
        std::size_t n = 0;
        for (const auto& u : utterances)
            n += u.length();
        return n;
    }
};

namespace detail {

inline std::string element_path(std::string_view base, std::size_t index) {
    return std::string(base) + "[" + std::to_string(index) + "]";
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ParseError(path + "." + key, "missing required field");
    return *it;
}

inline std::optional<std::int64_t> optional_ms(const nlohmann::json& obj, const char* key, const std::string& path) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null())
        return std::nullopt;
    if (!it->is_number_integer())
        throw ParseError(path + "." + key, "expected integer milliseconds");
    return it->get<std::int64_t>();
}

}  // namespace detail

// Builds a validated transcript from its JSON document.
inline Transcript parse_transcript(const nlohmann::json& doc, Role role, const NormalizationConfig& config = {}) {
    using nlohmann::json;
    if (!doc.is_object())
        throw ParseError("$", "expected an object");

    Transcript t;
    t.role = role;

    const json& speakers = detail::require(doc, "speakers", "$");
    if (!speakers.is_array())
        throw ParseError("$.speakers", "expected an array");
    for (std::size_t i = 0; i < speakers.size(); ++i) {
        const auto path = detail::element_path("$.speakers", i);
        if (!speakers[i].is_string())
            throw ParseError(path, "expected a string");
        auto label = speakers[i].get<std::string>();
        if (label.empty())
            throw ValidationError(path + ": speaker label must be non-empty");
        if (t.speaker_index(label))
            throw ValidationError(path + ": duplicate speaker '" + label + "'");
        t.speakers.push_back(std::move(label));
    }

    const json& utterances = detail::require(doc, "utterances", "$");
    if (!utterances.is_array())
        throw ParseError("$.utterances", "expected an array");
    for (std::size_t u = 0; u < utterances.size(); ++u) {
        const auto path = detail::element_path("$.utterances", u);
        const json& item = utterances[u];
        if (!item.is_object())
            throw ParseError(path, "expected an object");

        const json& speaker = detail::require(item, "speaker", path);
        if (!speaker.is_string())
            throw ParseError(path + ".speaker", "expected a string");
        const json& text = detail::require(item, "text", path);
        if (!text.is_string())
            throw ParseError(path + ".text", "expected a string");

        Utterance utt;
        utt.speaker = speaker.get<std::string>();
        if (!t.speaker_index(utt.speaker))
            throw ValidationError(path + ".speaker: '" + utt.speaker + "' is not listed in $.speakers");

        const auto surfaces = tokenize(text.get_ref<const std::string&>());
        if (surfaces.empty())
            throw ValidationError(path + ".text: utterance text is empty");
        for (std::size_t k = 0; k < surfaces.size(); ++k)
            utt.tokens.push_back(Token{surfaces[k], normalize(surfaces[k], config), u, k});

        utt.start_ms = detail::optional_ms(item, "start_ms", path);
        utt.end_ms = detail::optional_ms(item, "end_ms", path);
        if (utt.timed() && *utt.start_ms > *utt.end_ms)
            throw ValidationError(path + ": start_ms exceeds end_ms");
        if (auto it = item.find("overlap"); it != item.end() && !it->is_null()) {
            if (!it->is_boolean())
                throw ParseError(path + ".overlap", "expected a boolean");
            utt.overlap = it->get<bool>();
        }
        t.utterances.push_back(std::move(utt));
    }
    return t;
}

inline Transcript parse_transcript(std::string_view document, Role role, const NormalizationConfig& config = {}) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(document);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("$", std::string("malformed JSON: ") + e.what());
    }
    return parse_transcript(doc, role, config);
}

inline Transcript parse_transcript(const std::string& document, Role role, const NormalizationConfig& config = {}) {
    return parse_transcript(std::string_view(document), role, config);
}

inline Transcript parse_transcript(const char* document, Role role, const NormalizationConfig& config = {}) {
    return parse_transcript(std::string_view(document), role, config);
}

inline nlohmann::json to_json(const Transcript& t) {
    nlohmann::json utterances = nlohmann::json::array();
    for (const auto& u : t.utterances) {
        std::string text;
        for (const auto& tok : u.tokens) {
            if (!text.empty())
                text += ' ';
            text += tok.surface;
        }
        nlohmann::json item = {{"speaker", u.speaker}, {"text", std::move(text)}};
        if (u.start_ms)
            item["start_ms"] = *u.start_ms;
        if (u.end_ms)
            item["end_ms"] = *u.end_ms;
        if (u.overlap)
            item["overlap"] = *u.overlap;
        utterances.push_back(std::move(item));
    }
    return {{"speakers", t.speakers}, {"utterances", std::move(utterances)}};
}

// One element of an alignment input sequence, with back-references into
// the transcript it came from.
struct SequenceToken {
    std::string text;
    std::size_t speaker = 0;    // index into the owning transcript's speakers
    std::size_t utterance = 0;  // index into the owning transcript's utterances
    std::size_t token = 0;      // index within the utterance
    std::size_t order = 0;      // position in document order over the whole transcript

    friend bool operator==(const SequenceToken&, const SequenceToken&) = default;
};

using Sequence = std::vector<SequenceToken>;

// E = [X, Y_1 .. Y_n]: the hypothesis token stream followed by one stream
// per reference speaker.
struct SequenceSet {
    Sequence hypothesis;
    std::vector<Sequence> references;
    std::vector<SpeakerId> hypothesis_speakers;
    std::vector<SpeakerId> reference_speakers;

    std::size_t size() const noexcept { return references.size() + 1; }

    const Sequence& operator[](std::size_t dim) const {
        return dim == 0 ? hypothesis : references[dim - 1];
    }

    std::size_t reference_token_count() const noexcept {
        std::size_t n = 0;
        for (const auto& y : references)
            n += y.size();
        return n;
    }

    friend bool operator==(const SequenceSet&, const SequenceSet&) = default;
};

inline SequenceSet extract_sequences(const Transcript& reference, const Transcript& hypothesis) {
    if (reference.speakers.empty())
        throw ValidationError("reference transcript has no speakers");

    SequenceSet e;
    e.hypothesis_speakers = hypothesis.speakers;
    e.reference_speakers = reference.speakers;
    e.references.resize(reference.speakers.size());

    std::size_t order = 0;
    for (std::size_t u = 0; u < hypothesis.utterances.size(); ++u) {
        const auto& utt = hypothesis.utterances[u];
        const auto spk = *hypothesis.speaker_index(utt.speaker);
        for (const auto& tok : utt.tokens)
            if (!tok.dropped())
                e.hypothesis.push_back({tok.normalized, spk, u, tok.token_index, order++});
    }

    order = 0;
    for (std::size_t u = 0; u < reference.utterances.size(); ++u) {
        const auto& utt = reference.utterances[u];
        const auto spk = *reference.speaker_index(utt.speaker);
        for (const auto& tok : utt.tokens)
            if (!tok.dropped())
                e.references[spk].push_back({tok.normalized, spk, u, tok.token_index, order++});
    }
    return e;
}

}  // namespace tdalign

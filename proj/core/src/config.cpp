#include "simeval/config.hpp"

#include <array>
#include <string_view>

#include "simeval/errors.hpp"

namespace simeval {

namespace {

// ISO-639-1 two-letter codes.
constexpr std::array<std::string_view, 184> kIso6391 = {
    "aa", "ab", "ae", "af", "ak", "am", "an", "ar", "as", "av", "ay", "az",
    "ba", "be", "bg", "bh", "bi", "bm", "bn", "bo", "br", "bs", "ca", "ce",
    "ch", "co", "cr", "cs", "cu", "cv", "cy", "da", "de", "dv", "dz", "ee",
    "el", "en", "eo", "es", "et", "eu", "fa", "ff", "fi", "fj", "fo", "fr",
    "fy", "ga", "gd", "gl", "gn", "gu", "gv", "ha", "he", "hi", "ho", "hr",
    "ht", "hu", "hy", "hz", "ia", "id", "ie", "ig", "ii", "ik", "io", "is",
    "it", "iu", "ja", "jv", "ka", "kg", "ki", "kj", "kk", "kl", "km", "kn",
    "ko", "kr", "ks", "ku", "kv", "kw", "ky", "la", "lb", "lg", "li", "ln",
    "lo", "lt", "lu", "lv", "mg", "mh", "mi", "mk", "ml", "mn", "mr", "ms",
    "mt", "my", "na", "nb", "nd", "ne", "ng", "nl", "nn", "no", "nr", "nv",
    "ny", "oc", "oj", "om", "or", "os", "pa", "pi", "pl", "ps", "pt", "qu",
    "rm", "rn", "ro", "ru", "rw", "sa", "sc", "sd", "se", "sg", "si", "sk",
    "sl", "sm", "sn", "so", "sq", "sr", "ss", "st", "su", "sv", "sw", "ta",
    "te", "tg", "th", "ti", "tk", "tl", "tn", "to", "tr", "ts", "tt", "tw",
    "ty", "ug", "uk", "ur", "uz", "ve", "vi", "vo", "wa", "wo", "xh", "yi",
    "yo", "za", "zh", "zu",
};

} // namespace

bool is_known_language(const std::string& code) {
    if (code.size() != 2) return false;
    for (auto c : kIso6391)
        if (c == code) return true;
    return false;
}

const char* to_string(TokenizerScheme scheme) {
    switch (scheme) {
        case TokenizerScheme::none: return "none";
        case TokenizerScheme::thirteen_a: return "13a";
        case TokenizerScheme::lang_rules: return "lang-rules";
    }
    return "?";
}

const char* to_string(ReadabilityVariant variant) {
    switch (variant) {
        case ReadabilityVariant::auto_by_language: return "auto";
        case ReadabilityVariant::force_en: return "force-en";
        case ReadabilityVariant::force_de: return "force-de";
    }
    return "?";
}

TokenizerScheme tokenizer_scheme_from_string(const std::string& name) {
    if (name == "none") return TokenizerScheme::none;
    if (name == "13a") return TokenizerScheme::thirteen_a;
    if (name == "lang-rules") return TokenizerScheme::lang_rules;
    throw ValidationError("unknown tokenizer: '" + name + "'");
}

ReadabilityVariant readability_variant_from_string(const std::string& name) {
    if (name == "auto" || name == "auto-by-language") return ReadabilityVariant::auto_by_language;
    if (name == "force-en") return ReadabilityVariant::force_en;
    if (name == "force-de") return ReadabilityVariant::force_de;
    throw ValidationError("unknown readability variant: '" + name + "'");
}

EvalConfig validate_config(const std::map<std::string, std::string>& raw) {
    EvalConfig config;
    bool have_language = false;
    for (const auto& [key, value] : raw) {
        if (key == "language") {
            config.language = value;
            have_language = true;
        } else if (key == "tokenizer") {
            config.tokenizer = tokenizer_scheme_from_string(value);
        } else if (key == "lowercase") {
            if (value == "true") config.lowercase = true;
            else if (value == "false") config.lowercase = false;
            else throw ValidationError("lowercase must be 'true' or 'false', got '" + value + "'");
        } else if (key == "embedding_model_id") {
            config.embedding_model_id = value;
        } else if (key == "readability_variant") {
            config.readability_variant = readability_variant_from_string(value);
        } else {
            throw ValidationError("unknown config key: '" + key + "'");
        }
    }
    if (!have_language) throw ValidationError("config is missing 'language'");
    if (!is_known_language(config.language)) throw UnknownLanguageError(config.language);
    return config;
}

std::string serialize_config(const EvalConfig& config) {
    std::string out;
    out += "lang=";
    out += config.language;
    out += ";tok=";
    out += to_string(config.tokenizer);
    out += ";lc=";
    out += config.lowercase ? "true" : "false";
    out += ";emb=";
    out += config.embedding_model_id;
    out += ";read=";
    out += to_string(config.readability_variant);
    return out;
}

EvalConfig parse_config(const std::string& serialized) {
    // Keys appear in canonical order; emb may contain '=' but not ';'.
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    while (pos <= serialized.size()) {
        auto end = serialized.find(';', pos);
        if (end == std::string::npos) end = serialized.size();
        auto field = serialized.substr(pos, end - pos);
        auto eq = field.find('=');
        if (eq == std::string::npos)
            throw ValidationError("malformed settings string: '" + serialized + "'");
        kv[field.substr(0, eq)] = field.substr(eq + 1);
        pos = end + 1;
        if (end == serialized.size()) break;
    }
    static const std::map<std::string, std::string> key_map = {
        {"lang", "language"}, {"tok", "tokenizer"}, {"lc", "lowercase"},
        {"emb", "embedding_model_id"}, {"read", "readability_variant"},
    };
    std::map<std::string, std::string> raw;
    for (const auto& [k, v] : kv) {
        auto it = key_map.find(k);
        if (it == key_map.end())
            throw ValidationError("unknown settings field: '" + k + "'");
        raw[it->second] = v;
    }
    return validate_config(raw);
}

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

SettingsFingerprint build_settings_fingerprint(const EvalConfig& config) {
    SettingsFingerprint fp;
    fp.human_readable = serialize_config(config);
    fp.digest = fnv1a64(fp.human_readable);
    return fp;
}

} // namespace simeval

#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace simeval {

enum class TokenizerScheme { none, thirteen_a, lang_rules };
enum class ReadabilityVariant { auto_by_language, force_en, force_de };

const char* to_string(TokenizerScheme scheme);
const char* to_string(ReadabilityVariant variant);
TokenizerScheme tokenizer_scheme_from_string(const std::string& name);
ReadabilityVariant readability_variant_from_string(const std::string& name);

// True for the ISO-639-1 two-letter codes.
bool is_known_language(const std::string& code);

// The complete settings record attached to every score. All fields that can
// move a metric are captured here so a report is traceable to the exact
// configuration that produced it.
struct EvalConfig {
    std::string language;                 // ISO-639-1 code, e.g. "de"
    TokenizerScheme tokenizer = TokenizerScheme::lang_rules;
    bool lowercase = false;
    std::string embedding_model_id;       // empty = no embedding metrics
    ReadabilityVariant readability_variant = ReadabilityVariant::auto_by_language;

    bool operator==(const EvalConfig&) const = default;
};

struct SettingsFingerprint {
    std::string human_readable;  // canonical ordered key=value string
    std::uint64_t digest = 0;    // FNV-1a 64 over human_readable

    bool operator==(const SettingsFingerprint&) const = default;
};

// Constructs a validated EvalConfig from a key-value map. Recognized keys are
// the field names: language, tokenizer, lowercase, embedding_model_id,
// readability_variant. Missing keys get defaults (lang-rules, false, "",
// auto-by-language). Throws ValidationError / UnknownLanguageError.
EvalConfig validate_config(const std::map<std::string, std::string>& raw);

// Canonical serialization:
//   lang=<l>;tok=<t>;lc=<true|false>;emb=<id>;read=<v>
std::string serialize_config(const EvalConfig& config);

// Parses the canonical serialization back; throws ValidationError on
// malformed input. parse_config(serialize_config(c)) == c.
EvalConfig parse_config(const std::string& serialized);

SettingsFingerprint build_settings_fingerprint(const EvalConfig& config);

std::uint64_t fnv1a64(std::string_view data);

} // namespace simeval

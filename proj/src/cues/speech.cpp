#include "autocam/cues/speech.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "autocam/errors.hpp"

namespace autocam {

namespace {

const std::map<std::string, std::string, std::less<>>& lemma_table() {
    static const std::map<std::string, std::string, std::less<>> table{
        {"looks", "look"},     {"looked", "look"},    {"looking", "look"},
        {"takes", "take"},     {"took", "take"},      {"taking", "take"},   {"taken", "take"},
        {"sees", "see"},       {"saw", "see"},        {"seeing", "see"},    {"seen", "see"},
        {"views", "view"},     {"viewing", "view"},   {"viewed", "view"},
        {"zooms", "zoom"},     {"zoomed", "zoom"},    {"zooming", "zoom"},
        {"pays", "pay"},       {"paid", "pay"},       {"paying", "pay"},
        {"watches", "watch"},  {"watched", "watch"},  {"watching", "watch"},
        {"leans", "lean"},     {"leaning", "lean"},   {"leaned", "lean"},
        {"gets", "get"},       {"getting", "get"},    {"got", "get"},
        {"angles", "angle"},   {"shots", "shot"},     {"details", "detail"},
        {"perspectives", "perspective"},
    };
    return table;
}

std::vector<std::vector<std::string>> phrases(std::initializer_list<const char*> list) {
    std::vector<std::vector<std::string>> out;
    for (const char* p : list) out.push_back(lemmatize(p));
    return out;
}

bool contains_phrase(const std::vector<std::string>& tokens, const std::vector<std::string>& phrase) {
    if (phrase.empty() || phrase.size() > tokens.size()) return false;
    return std::search(tokens.begin(), tokens.end(), phrase.begin(), phrase.end()) != tokens.end();
}

} // namespace

std::vector<std::string> lemmatize(std::string_view text) {
    std::string cleaned;
    cleaned.reserve(text.size());
    for (char c : text) {
        const auto uc = static_cast<unsigned char>(c);
        if (std::isalnum(uc) || c == '\'')
            cleaned.push_back(static_cast<char>(std::tolower(uc)));
        else
            cleaned.push_back(' ');
    }
    std::vector<std::string> tokens;
    std::istringstream in(cleaned);
    for (std::string tok; in >> tok;) {
        if (auto it = lemma_table().find(tok); it != lemma_table().end()) tok = it->second;
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

LexiconSpeechLabeler::LexiconSpeechLabeler()
    : tight_(phrases({"closer", "close look", "close view", "close up", "closeup", "up close",
                      "zoom in", "pay attention", "pay more attention", "lean in", "in detail",
                      "tight shot", "get close"})),
      high_(phrases({"from the top", "from top", "top down", "top view", "from above", "overhead",
                     "higher position", "higher angle", "high angle", "from up high",
                     "bird's eye", "birds eye", "look down on", "from a higher"})) {}

SpeechLabel LexiconSpeechLabeler::classify(std::string_view utterance) const {
    const auto tokens = lemmatize(utterance);
    for (const auto& p : tight_)
        if (contains_phrase(tokens, p)) return SpeechLabel::TightFraming;
    for (const auto& p : high_)
        if (contains_phrase(tokens, p)) return SpeechLabel::HighAngle;
    return SpeechLabel::Normal;
}

const SpeechLabeler& default_speech_labeler() {
    static const LexiconSpeechLabeler labeler;
    return labeler;
}

SpeechIntent label_speech(std::string_view utterance, double timestamp, const SpeechLabeler& labeler) {
    const bool blank = std::all_of(utterance.begin(), utterance.end(),
                                   [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
    if (blank) throw Error(ErrorCode::EmptyUtterance, "utterance has no text");
    return SpeechIntent{labeler.classify(utterance), std::string(utterance), timestamp};
}

} // namespace autocam

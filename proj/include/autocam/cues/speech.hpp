#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "autocam/cues/types.hpp"

namespace autocam {

// Backend that maps one transcribed utterance to an intent label.  A model
// based labeler can be dropped in behind this interface.
class SpeechLabeler {
public:
    virtual ~SpeechLabeler() = default;
    virtual SpeechLabel classify(std::string_view utterance) const = 0;
};

// Lower-cased word tokens with a small lemma table applied (verb inflections
// and plurals; comparatives such as "closer" are kept as-is).
std::vector<std::string> lemmatize(std::string_view text);

// Rule cascade over lemmatized phrases: closer-look lexicon first, then the
// overhead-view lexicon, otherwise Normal.
class LexiconSpeechLabeler : public SpeechLabeler {
public:
    LexiconSpeechLabeler();

    SpeechLabel classify(std::string_view utterance) const override;

private:
    using Phrase = std::vector<std::string>;
    std::vector<Phrase> tight_;
    std::vector<Phrase> high_;
};

const SpeechLabeler& default_speech_labeler();

// Throws EmptyUtterance for blank text.
SpeechIntent label_speech(std::string_view utterance, double timestamp = 0.0,
                          const SpeechLabeler& labeler = default_speech_labeler());

} // namespace autocam

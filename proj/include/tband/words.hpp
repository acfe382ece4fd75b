#pragma once
// Timed words: finite sequences of (letter, timestamp) events with
// nondecreasing timestamps. Letters are plain strings; a word over an
// alphabet of letter *sets* uses the canonical rendering "{a,b}" as its
// letter, so every word-level operation works uniformly.
//
// Also provides the 0-elimination map on words (drop everything at time 0,
// merge simultaneous letters into sets) and the canonical key of a word's
// distance-0 equivalence class.

#include <tband/util.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tband {

// A set of base letters, kept sorted and duplicate-free.
using Label = std::vector<std::string>;

inline Label make_label(std::vector<std::string> letters) {
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    return letters;
}

// Singleton labels render bare; larger sets render in braces.
inline std::string label_string(const Label& l) {
    if (l.size() == 1) return l[0];
    return "{" + join(l, ",") + "}";
}

struct Event {
    std::string letter;
    Rat time = 0;
    bool operator==(const Event& o) const { return letter == o.letter && time == o.time; }
};

struct TimedWord {
    std::vector<Event> events;  // nondecreasing times, all >= 0

    bool operator==(const TimedWord& o) const { return events == o.events; }
    bool empty() const { return events.empty(); }
    Rat duration() const { return events.empty() ? Rat(0) : events.back().time; }
};

inline void validate_word(const TimedWord& w) {
    for (std::size_t i = 0; i < w.events.size(); ++i) {
        if (w.events[i].time < 0)
            throw ValidationError("timed word has a negative timestamp");
        if (i > 0 && w.events[i].time < w.events[i - 1].time)
            throw ValidationError("timed word timestamps must be nondecreasing");
    }
}

// "a@1/2 b@2" / "{a,b}@5" notation. An empty string is the empty word.
inline TimedWord parse_timed_word(const std::string& text) {
    TimedWord w;
    std::istringstream is(text);
    std::string tok;
    int n = 0;
    while (is >> tok) {
        ++n;
        auto at = tok.rfind('@');
        if (at == std::string::npos || at == 0 || at + 1 == tok.size())
            throw ParseError("expected letter@time, got '" + tok + "'");
        auto t = parse_rat(tok.substr(at + 1));
        if (!t || *t < 0) throw ParseError("bad timestamp in '" + tok + "'");
        w.events.push_back(Event{tok.substr(0, at), *t});
    }
    validate_word(w);
    return w;
}

inline std::string format_timed_word(const TimedWord& w) {
    std::vector<std::string> parts;
    for (const auto& e : w.events) parts.push_back(e.letter + "@" + rat_string(e.time));
    return join(parts, " ");
}

// ---------------------------------------------------------------------------
// 0-elimination on words: events at time 0 are dropped, simultaneous events
// merge into one set-letter event. The result has strictly increasing
// positive timestamps.

struct SetEvent {
    Label letters;
    Rat time = 0;
    bool operator==(const SetEvent& o) const { return letters == o.letters && time == o.time; }
    bool operator<(const SetEvent& o) const {
        if (time != o.time) return time < o.time;
        return letters < o.letters;
    }
};

struct ZeroFreeWord {
    std::vector<SetEvent> events;  // strictly increasing times, all > 0
    bool operator==(const ZeroFreeWord& o) const { return events == o.events; }
    bool operator<(const ZeroFreeWord& o) const { return events < o.events; }
};

inline ZeroFreeWord nu_word(const TimedWord& w) {
    std::map<Rat, std::set<std::string>> groups;
    for (const auto& e : w.events)
        if (e.time > 0) groups[e.time].insert(e.letter);
    ZeroFreeWord out;
    for (auto& [t, ls] : groups)
        out.events.push_back(SetEvent{Label(ls.begin(), ls.end()), t});
    return out;
}

inline std::string format_zero_free_word(const ZeroFreeWord& w) {
    std::vector<std::string> parts;
    for (const auto& e : w.events) parts.push_back(label_string(e.letters) + "@" + rat_string(e.time));
    return join(parts, " ");
}

// ---------------------------------------------------------------------------
// Canonical key of a word's distance-0 class: two words are at pseudo-
// distance 0 exactly when they carry the same letter set at time 0 and the
// same set of (positive time, letter) pairs. Order and multiplicity of
// simultaneous events never matter.

struct ZeroClassKey {
    std::set<std::string> at_zero;
    std::set<std::pair<Rat, std::string>> positive;

    bool operator==(const ZeroClassKey& o) const {
        return at_zero == o.at_zero && positive == o.positive;
    }
    bool operator<(const ZeroClassKey& o) const {
        if (at_zero != o.at_zero) return at_zero < o.at_zero;
        return positive < o.positive;
    }
};

inline ZeroClassKey zero_class_key(const TimedWord& w) {
    ZeroClassKey k;
    for (const auto& e : w.events) {
        if (e.time == 0)
            k.at_zero.insert(e.letter);
        else
            k.positive.emplace(e.time, e.letter);
    }
    return k;
}

// The canonical representative of a key: events sorted by time then letter.
inline TimedWord key_representative(const ZeroClassKey& k) {
    TimedWord w;
    for (const auto& a : k.at_zero) w.events.push_back(Event{a, 0});
    for (const auto& [t, a] : k.positive) w.events.push_back(Event{a, t});
    return w;
}

}  // namespace tband

#include "snipassist/tasks.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <thread>

#include "snipassist/errors.hpp"
#include "snipassist/tagger.hpp"
#include "snipassist/text.hpp"

namespace snipassist {

namespace {

struct Phrase {
    std::vector<std::string> words;
    std::size_t end = 0;           // index one past the last consumed token
    bool pronoun_object = false;   // "convert it to string"

    bool empty() const { return words.empty(); }
    std::string joined() const {
        std::string out;
        for (const auto& w : words) {
            if (!out.empty()) out.push_back(' ');
            out += w;
        }
        return out;
    }
};

class Chunker {
  public:
    Chunker(const std::vector<Token>& tokens, const Lexicon& lexicon) : tokens_(tokens), lexicon_(lexicon) {
        clause_.resize(tokens.size());
        std::size_t clause = 0;
        for (std::size_t i = 0; i < tokens.size(); ++i) {
            if (tokens[i].tag == Tag::Punct || tokens[i].tag == Tag::Sub) ++clause;
            clause_[i] = clause;
        }
    }

    std::vector<TaskPhrase> run() {
        for (std::size_t i = 0; i < tokens_.size() && out_.size() < kMaxTasksPerTitle; ++i) {
            switch (tokens_[i].tag) {
                case Tag::Verb:
                case Tag::Gerund: active(i); break;
                case Tag::Participle: passive(i); break;
                default: break;
            }
        }
        return std::move(out_);
    }

  private:
    Tag tag(std::size_t i) const { return i < tokens_.size() ? tokens_[i].tag : Tag::Punct; }

    std::size_t skip_adverbs(std::size_t i) const {
        while (i < tokens_.size() && tokens_[i].tag == Tag::Adv) ++i;
        return i;
    }

    /// A participle directly before a noun modifies it ("sorted list").
    bool is_modifier_participle(std::size_t i) const {
        if (tag(i) != Tag::Participle) return false;
        auto next = tag(i + 1);
        return next == Tag::Noun || (next == Tag::Participle && is_modifier_participle(i + 1));
    }

    Phrase noun_phrase(std::size_t i) const {
        Phrase np;
        while (i < tokens_.size() && (tag(i) == Tag::Det || (tag(i) == Tag::Pron && tokens_[i].modifier))) ++i;
        if (tag(i) == Tag::Pron) {
            np.pronoun_object = true;
            np.end = i + 1;
            return np;
        }
        while (i < tokens_.size() && (tag(i) == Tag::Noun || is_modifier_participle(i))) {
            np.words.push_back(tokens_[i].text);
            ++i;
        }
        np.end = i;
        return np;
    }

    std::vector<std::string> prep_phrases(std::size_t i) const {
        std::vector<std::string> pps;
        while (tag(i) == Tag::Prep) {
            auto np = noun_phrase(i + 1);
            if (np.empty()) break;
            pps.push_back(tokens_[i].text + " " + np.joined());
            i = np.end;
        }
        return pps;
    }

    bool negated(std::size_t anchor) const {
        for (std::size_t k = anchor; k-- > 0;) {
            if (clause_[k] != clause_[anchor]) break;
            if (tokens_[k].tag == Tag::Neg) return true;
        }
        return false;
    }

    void emit(const std::string& verb, const std::string& object, const std::string& pp) {
        if (out_.size() >= kMaxTasksPerTitle) return;
        bool relevant = lexicon_.is_action(verb);
        if (!relevant && !object.empty()) {
            auto head = object.substr(object.rfind(' ') == std::string::npos ? 0 : object.rfind(' ') + 1);
            relevant = lexicon_.is_generic_object(head);
        }
        if (!relevant) return;
        auto text = render_task(verb, object, pp);
        if (std::any_of(out_.begin(), out_.end(), [&](const TaskPhrase& t) { return t.text == text; })) return;
        out_.push_back(TaskPhrase{verb, object, pp, std::move(text), {}});
    }

    void emit_all(const std::string& verb, const Phrase& object, const std::vector<std::string>& pps) {
        if (!object.empty()) {
            auto obj = object.joined();
            emit(verb, obj, "");
            for (const auto& pp : pps) emit(verb, obj, pp);
        } else {
            for (const auto& pp : pps) emit(verb, "", pp);
        }
    }

    void active(std::size_t i) {
        if (negated(i)) return;
        auto verb = lemmatize_verb(tokens_[i].text, lexicon_);
        auto object = noun_phrase(skip_adverbs(i + 1));
        auto pps = prep_phrases(object.empty() && !object.pronoun_object ? skip_adverbs(i + 1)
                                                                          : skip_adverbs(object.end));
        emit_all(verb, object, pps);
    }

    /// "iterator is returned", "iterator returned" -> "return iterator".
    void passive(std::size_t p) {
        if (is_modifier_participle(p)) return;
        std::size_t k = p;
        while (k > 0 && (tag(k - 1) == Tag::Adv || tag(k - 1) == Tag::Neg || tag(k - 1) == Tag::Aux)) --k;
        std::size_t end = k;
        while (k > 0 && (tag(k - 1) == Tag::Noun || is_modifier_participle(k - 1))) --k;
        if (k == end || clause_[k] != clause_[p]) return;
        if (negated(p)) return;

        Phrase subject;
        for (std::size_t j = k; j < end; ++j) subject.words.push_back(tokens_[j].text);
        auto verb = lemmatize_verb(tokens_[p].text, lexicon_);
        emit_all(verb, subject, prep_phrases(skip_adverbs(p + 1)));
    }

    const std::vector<Token>& tokens_;
    const Lexicon& lexicon_;
    std::vector<std::size_t> clause_;
    std::vector<TaskPhrase> out_;
};

bool has_uppercase(std::string_view s) {
    return std::any_of(s.begin(), s.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
}

using TaskMap = std::map<std::string, TaskPhrase>;

void merge_into(TaskMap& into, TaskPhrase task) {
    auto [it, inserted] = into.try_emplace(task.text, task);
    if (!inserted) it->second.sources.insert(task.sources.begin(), task.sources.end());
}

TaskMap extract_range(std::span<const Question> questions, const Lexicon& lexicon) {
    TaskMap tasks;
    for (const auto& q : questions) {
        for (auto& task : extract_tasks(q.title, lexicon)) {
            task.sources.insert(q.id);
            merge_into(tasks, std::move(task));
        }
    }
    return tasks;
}

}  // namespace

std::string render_task(std::string_view verb, std::string_view object, std::string_view prep_phrase) {
    std::string out(verb);
    for (auto part : {object, prep_phrase}) {
        if (part.empty()) continue;
        out.push_back(' ');
        out.append(part);
    }
    return out;
}

bool is_well_formed(const TaskPhrase& task) {
    if (task.verb.empty() || (task.object.empty() && task.prep_phrase.empty())) return false;
    if (task.text != render_task(task.verb, task.object, task.prep_phrase)) return false;
    if (has_uppercase(task.text)) return false;
    if (task.text.find("  ") != std::string::npos || task.text != text::trim(task.text)) return false;
    for (auto word : text::split_whitespace(task.text)) {
        if (Lexicon::determiners().count(word) != 0) return false;
    }
    return task.text.find_first_of("\t\n\r") == std::string::npos;
}

std::vector<TaskPhrase> extract_tasks(std::string_view title, const Lexicon& lexicon) {
    auto tokens = normalize_title(title, lexicon);
    return Chunker(tokens, lexicon).run();
}

std::vector<TaskPhrase> extract_corpus(const CorpusStore& store, const Lexicon& lexicon) {
    auto questions = store.questions();
    constexpr std::size_t kChunk = 20000;
    TaskMap merged;
    if (questions.size() <= kChunk) {
        merged = extract_range(questions, lexicon);
    } else {
        std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
        std::size_t per = (questions.size() + workers - 1) / workers;
        std::vector<std::future<TaskMap>> parts;
        for (std::size_t b = 0; b < questions.size(); b += per) {
            auto slice = questions.subspan(b, std::min(per, questions.size() - b));
            parts.push_back(std::async(std::launch::async, extract_range, slice, std::cref(lexicon)));
        }
        for (auto& part : parts) {
            for (auto& [text, task] : part.get()) merge_into(merged, std::move(task));
        }
    }
    std::vector<TaskPhrase> out;
    out.reserve(merged.size());
    for (auto& [text, task] : merged) out.push_back(std::move(task));
    return out;
}

void write_tasks_tsv(std::ostream& out, const std::vector<TaskPhrase>& tasks) {
    out << "text\tverb\tobject\tprep_phrase\tsource_count\tsources\n";
    for (const auto& t : tasks) {
        out << t.text << '\t' << t.verb << '\t' << t.object << '\t' << t.prep_phrase << '\t' << t.sources.size()
            << '\t';
        bool first = true;
        for (auto id : t.sources) {
            if (!first) out << ',';
            out << id;
            first = false;
        }
        out << '\n';
    }
}

std::vector<TaskPhrase> read_tasks_tsv(std::istream& in) {
    std::vector<TaskPhrase> tasks;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = text::split(line, '\t');
        if (line_no == 1 && fields[0] == "text") continue;
        if (fields.size() != 6) {
            throw IoError("tasks line " + std::to_string(line_no) + ": expected 6 tab-separated fields");
        }
        TaskPhrase t{std::string(fields[1]), std::string(fields[2]), std::string(fields[3]), std::string(fields[0]),
                     {}};
        std::size_t count = 0;
        auto r = std::from_chars(fields[4].data(), fields[4].data() + fields[4].size(), count);
        if (r.ec != std::errc{}) throw IoError("tasks line " + std::to_string(line_no) + ": bad source_count");
        if (!fields[5].empty()) {
            for (auto id_text : text::split(fields[5], ',')) {
                PostId id = 0;
                auto rr = std::from_chars(id_text.data(), id_text.data() + id_text.size(), id);
                if (rr.ec != std::errc{}) throw IoError("tasks line " + std::to_string(line_no) + ": bad source id");
                t.sources.insert(id);
            }
        }
        if (t.sources.size() != count) {
            throw IoError("tasks line " + std::to_string(line_no) + ": source_count does not match sources");
        }
        if (!is_well_formed(t)) throw IoError("tasks line " + std::to_string(line_no) + ": malformed task phrase");
        tasks.push_back(std::move(t));
    }
    return tasks;
}

}  // namespace snipassist

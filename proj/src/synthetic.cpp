#include "termrec/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "termrec/error.hpp"

namespace termrec {
namespace {

struct Topic {
  const char* keyword;
  std::vector<const char*> words;  // embedding vocabulary, keyword first
  std::vector<const char*> forms;  // inflected forms used in event text
};

const std::vector<Topic>& topics() {
  static const std::vector<Topic> table = {
      {"painting",
       {"painting", "art", "artwork", "sculpture", "drawing", "gallery", "museum", "artist"},
       {"paintings", "arts", "artworks", "sculptures", "drawings", "galleries", "museums", "artists"}},
      {"music",
       {"music", "concert", "orchestra", "band", "jazz", "choir", "song", "musician"},
       {"concerts", "orchestras", "bands", "jazz", "choirs", "songs", "musicians", "musical"}},
      {"cooking",
       {"cooking", "cuisine", "recipe", "baking", "chef", "kitchen", "food", "dish"},
       {"cooked", "cooks", "cuisines", "recipes", "baked", "chefs", "kitchens", "dishes"}},
      {"fitness",
       {"fitness", "exercise", "workout", "yoga", "gym", "training", "running", "wellness"},
       {"exercises", "exercising", "workouts", "gyms", "trained", "runs", "yoga", "wellness"}},
      {"traveling",
       {"traveling", "travel", "trip", "tourism", "journey", "adventure", "destination", "abroad"},
       {"travels", "traveled", "trips", "journeys", "adventures", "destinations", "abroad", "tourism"}},
      {"programming",
       {"programming", "software", "coding", "computer", "developer", "algorithm", "hackathon", "code"},
       {"programs", "programmed", "computers", "developers", "algorithms", "hackathons", "coded", "codes"}},
      {"sport",
       {"sport", "athletics", "football", "rowing", "racing", "wrestling", "soccer", "basketball"},
       {"sports", "athletic", "races", "raced", "rowed", "wrestled", "soccer", "basketball"}},
      {"film",
       {"film", "movie", "cinema", "screening", "documentary", "director", "actor", "theater"},
       {"films", "movies", "cinemas", "screenings", "documentaries", "directors", "actors", "theaters"}},
      {"science",
       {"science", "research", "physics", "chemistry", "biology", "laboratory", "experiment", "scientist"},
       {"sciences", "researchers", "researching", "physics", "laboratories", "experiments", "scientists", "biology"}},
      {"volunteering",
       {"volunteering", "volunteer", "charity", "community", "service", "donation", "outreach", "nonprofit"},
       {"volunteers", "volunteered", "charities", "communities", "services", "donations", "nonprofits", "outreach"}},
      {"dance",
       {"dance", "ballet", "salsa", "choreography", "dancer", "tango", "hiphop", "performance"},
       {"dancing", "dances", "danced", "dancers", "ballets", "tango", "salsa", "performances"}},
      {"writing",
       {"writing", "poetry", "literature", "novel", "author", "poem", "book", "journalism"},
       {"writings", "poems", "novels", "authors", "books", "poetry", "literature", "journalism"}},
  };
  return table;
}

const std::vector<const char*>& filler() {
  static const std::vector<const char*> words = {
      "students", "campus", "join", "event", "free", "open", "hall", "room", "session",
      "welcome", "week", "evening", "afternoon", "center", "university", "members", "group",
      "club", "meeting", "lobby", "street", "tour", "highlights", "friends", "snacks",
      "everyone", "semester", "workshop", "night", "featuring"};
  return words;
}

const std::vector<const char*>& title_nouns() {
  static const std::vector<const char*> words = {"Workshop", "Night", "Meetup", "Session",
                                                 "Showcase", "Festival", "Tour", "Club"};
  return words;
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  // Uniform in (0, 1).
  double uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

  // k distinct values of [0, n), in draw order.
  std::vector<std::size_t> choose(std::size_t n, std::size_t k) {
    std::vector<std::size_t> pool(n);
    for (std::size_t i = 0; i < n; ++i) pool[i] = i;
    for (std::size_t i = 0; i < k; ++i) std::swap(pool[i], pool[i + below(n - i)]);
    pool.resize(k);
    return pool;
  }

 private:
  std::mt19937_64 engine_;
};

std::string capitalize(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

Item make_event(Rng& rng, const Topic& topic, const std::string& id) {
  auto topic_form = [&]() -> std::string {
    // Mostly inflected forms; occasionally a plain vocabulary word.
    if (rng.below(5) == 0) return topic.words[1 + rng.below(topic.words.size() - 1)];
    return topic.forms[rng.below(topic.forms.size())];
  };
  const auto& fill = filler();

  std::string title = capitalize(topic_form()) + " " + title_nouns()[rng.below(title_nouns().size())];

  std::vector<std::string> words;
  for (int i = 0; i < 3; ++i) words.push_back(topic_form());
  for (int i = 0; i < 7; ++i) words.push_back(fill[rng.below(fill.size())]);
  rng.shuffle(words);
  std::string description = capitalize(words[0]);
  for (std::size_t i = 1; i < words.size(); ++i) description += " " + words[i];
  description += ".";

  const auto tag_ids = rng.choose(topic.words.size(), 2);
  std::string tags = capitalize(topic.words[tag_ids[0]]) + ", " + capitalize(topic.words[tag_ids[1]]);

  Item item;
  item.id = id;
  item.fields = {title, description, tags};
  item.metadata["topic"] = topic.keyword;
  return item;
}

}  // namespace

SyntheticCorpus generate_synthetic(const SyntheticOptions& options) {
  const auto& all_topics = topics();
  if (options.topics_per_workbook > all_topics.size() ||
      options.topics_per_user > options.topics_per_workbook || options.topics_per_user == 0 ||
      options.events_per_topic == 0 || options.dimension == 0) {
    throw invalid_argument("synthetic options out of range");
  }
  Rng rng(options.seed);
  SyntheticCorpus corpus;

  // Clustered embeddings: members of a topic sit around a shared centroid.
  for (const Topic& topic : all_topics) {
    std::vector<double> centroid(options.dimension);
    for (double& c : centroid) c = rng.gaussian();
    for (const char* word : topic.words) {
      std::vector<double> v(options.dimension);
      for (std::size_t d = 0; d < v.size(); ++d) v[d] = centroid[d] + 0.45 * rng.gaussian();
      corpus.words.emplace_back(word);
      corpus.vectors.push_back(std::move(v));
    }
  }
  for (const char* word : filler()) {
    std::vector<double> v(options.dimension);
    for (double& c : v) c = rng.gaussian();
    corpus.words.emplace_back(word);
    corpus.vectors.push_back(std::move(v));
  }

  for (std::size_t w = 0; w < options.workbooks; ++w) {
    LabeledWorkbook workbook;
    const auto chosen = rng.choose(all_topics.size(), options.topics_per_workbook);
    std::vector<std::vector<ItemId>> topic_events(chosen.size());
    std::vector<std::pair<std::size_t, std::size_t>> slots;  // (topic slot, ordinal)
    for (std::size_t t = 0; t < chosen.size(); ++t) {
      for (std::size_t e = 0; e < options.events_per_topic; ++e) slots.emplace_back(t, e);
    }
    rng.shuffle(slots);
    for (std::size_t e = 0; e < slots.size(); ++e) {
      char id[32];
      std::snprintf(id, sizeof id, "w%zu-e%02zu", w + 1, e + 1);
      const std::size_t t = slots[e].first;
      workbook.events.push_back(make_event(rng, all_topics[chosen[t]], id));
      topic_events[t].push_back(id);
    }
    for (std::size_t u = 0; u < options.users_per_workbook; ++u) {
      WorkbookUser user;
      for (const std::size_t t : rng.choose(chosen.size(), options.topics_per_user)) {
        user.keywords.emplace_back(all_topics[chosen[t]].keyword);
        user.liked.insert(user.liked.end(), topic_events[t].begin(), topic_events[t].end());
      }
      std::sort(user.liked.begin(), user.liked.end());
      workbook.users.push_back(std::move(user));
    }
    workbook.validate();
    corpus.workbooks.push_back(std::move(workbook));
  }
  return corpus;
}

void write_embeddings(std::ostream& out, const SyntheticCorpus& corpus) {
  char buf[32];
  for (std::size_t i = 0; i < corpus.words.size(); ++i) {
    out << corpus.words[i];
    for (const double v : corpus.vectors[i]) {
      std::snprintf(buf, sizeof buf, " %.6f", v);
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace termrec

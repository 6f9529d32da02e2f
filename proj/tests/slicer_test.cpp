#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "anx/slicer.hpp"
#include "test_support.hpp"

namespace anx {
namespace {

using testing::bundled_tables;
using Tokens = std::vector<std::string>;

bool past(const Tokens& t) { return detect_past_verb(t, bundled_tables()); }
bool present(const Tokens& t) { return detect_present_verb(t, bundled_tables()); }
TenseLabel tense(const Tokens& t) { return classify_tense(t, bundled_tables()); }

TEST(DetectPastVerb, Examples) {
  EXPECT_TRUE(past({"she", "walked", "home"}));
  EXPECT_TRUE(past({"he", "went", "home"}));
  EXPECT_FALSE(past({"nice", "red", "car"}));
}

TEST(DetectPastVerb, AuxiliariesAndStoplist) {
  EXPECT_TRUE(past({"it", "was", "fine"}));
  EXPECT_TRUE(past({"we", "could"}));
  EXPECT_FALSE(past({"a", "hundred", "bees"}));
  EXPECT_FALSE(past({"i", "need", "sleep"}));
  EXPECT_FALSE(past({"bed"}));  // under the 4-letter minimum
}

TEST(DetectPresentVerb, Examples) {
  EXPECT_TRUE(present({"he", "runs", "daily"}));
  EXPECT_TRUE(present({"i", "am", "here"}));
  EXPECT_FALSE(present({"old", "photo"}));
}

TEST(DetectPresentVerb, SuffixRules) {
  EXPECT_TRUE(present({"she", "watches"}));   // -es stem
  EXPECT_TRUE(present({"thinking"}));         // -ing
  EXPECT_FALSE(present({"king"}));            // too short for -ing
  EXPECT_FALSE(present({"photos"}));          // stem not a base form
  EXPECT_TRUE(present({"it", "goes"}));
  EXPECT_TRUE(present({"he", "fixes", "it"}));
  EXPECT_FALSE(present({"bees"}));            // -es needs a sibilant or -o stem
}

TEST(ClassifyTense, Examples) {
  EXPECT_EQ(tense({"i", "will", "go", "tomorrow"}), TenseLabel::Future);
  EXPECT_EQ(tense({"i", "hope", "it", "works"}), TenseLabel::Future);
  EXPECT_EQ(tense({"she", "walked", "home"}), TenseLabel::Past);
}

TEST(ClassifyTense, PastWinsOverFuture) {
  EXPECT_EQ(tense({"i", "hoped", "it", "will", "work"}), TenseLabel::Past);
}

TEST(ClassifyTense, FutureNeedsAPresentVerb) {
  EXPECT_EQ(tense({"tomorrow", "maybe"}), TenseLabel::NoVerb);
  EXPECT_EQ(tense({"next", "week", "go"}), TenseLabel::Future);
  EXPECT_EQ(tense({"week", "next", "go"}), TenseLabel::Present);
}

TEST(ClassifyTense, EverySignalWordAndBigram) {
  for (auto w : kFutureSignalWords) {
    EXPECT_EQ(tense({"i", std::string(w), "go"}), TenseLabel::Future) << w;
  }
  for (auto n : kNextSignalNouns) {
    EXPECT_EQ(tense({"next", std::string(n), "i", "go"}), TenseLabel::Future) << n;
  }
  EXPECT_EQ(tense({"next", "time", "i", "go"}), TenseLabel::Present);
}

TEST(PronounKeys, Examples) {
  const auto set_of = [](std::initializer_list<PronounKey> keys) {
    PronounSet s;
    for (auto k : keys) s.insert(k);
    return s;
  };
  EXPECT_EQ(pronoun_keys(Tokens{"i", "told", "him"}), set_of({PronounKey::I, PronounKey::Him}));
  EXPECT_EQ(pronoun_keys(Tokens{"we", "love", "you"}), set_of({PronounKey::We, PronounKey::You}));
  EXPECT_TRUE(pronoun_keys(Tokens{"trust", "us"}).empty());
  EXPECT_EQ(pronoun_keys(Tokens{"i", "i", "i"}).size(), 1u);
}

TEST(TimeKeys, Projection) {
  EXPECT_EQ(time_keys({8, 2}), (TimeKeys{8, 2}));
  EXPECT_EQ(time_keys({0, 0}), (TimeKeys{0, 0}));
  EXPECT_EQ(time_keys({23, 6}), (TimeKeys{23, 6}));
}

TEST(VerbTables, BundledTablesLoadAndAreNonEmpty) {
  const auto& t = bundled_tables();
  EXPECT_FALSE(t.irregular_past.empty());
  EXPECT_FALSE(t.irregular_base.empty());
  for (auto w : {"went", "said", "got", "made", "knew", "thought", "took", "saw", "came", "felt",
                 "told", "left"}) {
    EXPECT_TRUE(t.irregular_past.contains(std::string_view(w))) << w;
  }
}

TEST(VerbTables, MissingFileIsIoError) {
  EXPECT_THROW(VerbTables::load_directory("/nonexistent/verbs"), IoError);
}

TEST(VerbTables, CommentLinesIgnored) {
  testing::TempDir dir;
  testing::write_file(dir / "irregular_past.txt", "# header\nwent\n\n");
  testing::write_file(dir / "irregular_base.txt", "go\n");
  testing::write_file(dir / "ed_stoplist.txt", "");
  const auto t = VerbTables::load_directory(dir.path());
  EXPECT_EQ(t.irregular_past.size(), 1u);
  EXPECT_TRUE(t.ed_stoplist.empty());
}

TEST(SliceKey, ParseAndPrint) {
  using K = SliceKey::Kind;
  EXPECT_EQ(parse_slice_key("all"), (SliceKey{K::All, 0}));
  EXPECT_EQ(parse_slice_key("hour:8"), (SliceKey{K::Hour, 8}));
  EXPECT_EQ(parse_slice_key("weekday:sat"), (SliceKey{K::Weekday, 5}));
  EXPECT_EQ(parse_slice_key("weekday:sunday"), (SliceKey{K::Weekday, 6}));
  EXPECT_EQ(parse_slice_key("tense:future"), (SliceKey{K::Tense, 2}));
  EXPECT_EQ(parse_slice_key("pronoun:them"), (SliceKey{K::Pronoun, 9}));
  EXPECT_EQ(parse_slice_key("pronoun:any"), (SliceKey{K::AnyPronoun, 0}));
  for (auto bad : {"", "hour", "hour:24", "hour:-1", "hour:8x", "weekday:7", "weekday:su",
                   "tense:perfect", "pronoun:us", "minute:3"}) {
    EXPECT_FALSE(parse_slice_key(bad)) << bad;
  }
  for (auto s : {"all", "pronoun:any", "hour:23", "weekday:0", "tense:noverb", "pronoun:i"}) {
    EXPECT_EQ(to_string(*parse_slice_key(s)), s);
  }
}

std::vector<std::string> vocabulary() {
  std::vector<std::string> v = {"walked", "went", "runs", "am", "is", "photo", "red", "next",
                                "day", "week", "time", "hope", "will", "tomorrow", "us", "i",
                                "you", "him", "them", "cat", "sleep", "hundred", "thinking"};
  for (auto w : kFutureSignalWords) v.emplace_back(w);
  return v;
}

TEST(SlicerProperties, TensePartitionAndSignalConsistency) {
  const auto vocab = vocabulary();
  std::mt19937 rng(17);
  std::uniform_int_distribution<std::size_t> pick(0, vocab.size() - 1);
  std::uniform_int_distribution<int> len(0, 8);
  std::array<std::size_t, 4> counts{};
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    Tokens t;
    for (int k = len(rng); k > 0; --k) t.push_back(vocab[pick(rng)]);
    const auto label = tense(t);
    ++counts[static_cast<std::size_t>(label)];
    const bool signal = has_future_signal(t);
    if (label == TenseLabel::Future) {
      ASSERT_TRUE(signal);
    }
    if (label == TenseLabel::Present) {
      ASSERT_FALSE(signal);
    }
    ASSERT_EQ(label == TenseLabel::Past, past(t));
  }
  EXPECT_EQ(counts[0] + counts[1] + counts[2] + counts[3], static_cast<std::size_t>(n));
  for (auto c : counts) EXPECT_GT(c, 0u);
}

}  // namespace
}  // namespace anx

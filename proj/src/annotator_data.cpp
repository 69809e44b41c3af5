#include "idiomatch/annotator.hpp"

namespace idiomatch::data {

const std::vector<WordPair>& lemma_exceptions() {
  static const std::vector<WordPair> table{
      // be / have / do / modal clitics
      {"am", "be"}, {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"},
      {"been", "be"}, {"being", "be"}, {"'m", "be"}, {"'re", "be"}, {"ai", "be"},
      {"has", "have"}, {"had", "have"}, {"having", "have"}, {"'ve", "have"},
      {"does", "do"}, {"did", "do"}, {"done", "do"}, {"doing", "do"},
      {"'ll", "will"}, {"'d", "would"}, {"n't", "not"}, {"wo", "will"}, {"ca", "can"},
      // irregular verbs
      {"goes", "go"}, {"went", "go"}, {"gone", "go"},
      {"got", "get"}, {"gotten", "get"},
      {"made", "make"}, {"took", "take"}, {"taken", "take"},
      {"came", "come"}, {"saw", "see"}, {"seen", "see"},
      {"knew", "know"}, {"known", "know"}, {"thought", "think"},
      {"said", "say"}, {"says", "say"}, {"told", "tell"},
      {"gave", "give"}, {"given", "give"}, {"found", "find"},
      {"kept", "keep"}, {"left", "leave"}, {"felt", "feel"},
      {"brought", "bring"}, {"bought", "buy"}, {"caught", "catch"},
      {"taught", "teach"}, {"fought", "fight"}, {"sought", "seek"},
      {"threw", "throw"}, {"thrown", "throw"}, {"grew", "grow"}, {"grown", "grow"},
      {"drew", "draw"}, {"drawn", "draw"}, {"flew", "fly"}, {"flown", "fly"},
      {"blew", "blow"}, {"blown", "blow"}, {"broke", "break"}, {"broken", "break"},
      {"spoke", "speak"}, {"spoken", "speak"}, {"chose", "choose"}, {"chosen", "choose"},
      {"wrote", "write"}, {"written", "write"}, {"rode", "ride"}, {"ridden", "ride"},
      {"rose", "rise"}, {"risen", "rise"}, {"drove", "drive"}, {"driven", "drive"},
      {"ate", "eat"}, {"eaten", "eat"}, {"fell", "fall"}, {"fallen", "fall"},
      {"forgot", "forget"}, {"forgotten", "forget"}, {"began", "begin"}, {"begun", "begin"},
      {"drank", "drink"}, {"drunk", "drink"}, {"sang", "sing"}, {"sung", "sing"},
      {"swam", "swim"}, {"ran", "run"}, {"sat", "sit"}, {"stood", "stand"},
      {"understood", "understand"}, {"lost", "lose"}, {"held", "hold"}, {"heard", "hear"},
      {"met", "meet"}, {"paid", "pay"}, {"laid", "lay"}, {"led", "lead"},
      {"sent", "send"}, {"spent", "spend"}, {"built", "build"}, {"lent", "lend"},
      {"bent", "bend"}, {"meant", "mean"}, {"slept", "sleep"}, {"swept", "sweep"},
      {"wept", "weep"}, {"won", "win"}, {"hung", "hang"}, {"shook", "shake"},
      {"shaken", "shake"}, {"woke", "wake"}, {"woken", "wake"}, {"wore", "wear"},
      {"worn", "wear"}, {"tore", "tear"}, {"torn", "tear"}, {"swore", "swear"},
      {"sworn", "swear"}, {"stole", "steal"}, {"stolen", "steal"}, {"froze", "freeze"},
      {"frozen", "freeze"}, {"hid", "hide"}, {"hidden", "hide"}, {"bitten", "bite"},
      {"struck", "strike"}, {"stuck", "stick"}, {"sank", "sink"}, {"sunk", "sink"},
      {"shot", "shoot"}, {"fed", "feed"}, {"fled", "flee"}, {"slid", "slide"},
      {"dug", "dig"}, {"spun", "spin"}, {"clung", "cling"}, {"swung", "swing"},
      {"bled", "bleed"}, {"sold", "sell"}, {"became", "become"}, {"sprang", "spring"},
      {"dealt", "deal"}, {"dreamt", "dream"}, {"burnt", "burn"}, {"learnt", "learn"},
      {"ground", "ground"}, {"bore", "bear"}, {"borne", "bear"}, {"overcame", "overcome"},
      // -ed / -ing forms the suffix rules get wrong
      {"added", "add"}, {"adding", "add"}, {"used", "use"}, {"using", "use"},
      {"excited", "excite"}, {"exciting", "excite"}, {"hoped", "hope"},
      // words that only look inflected
      {"during", "during"}, {"morning", "morning"}, {"evening", "evening"},
      {"nothing", "nothing"}, {"something", "something"}, {"anything", "anything"},
      {"everything", "everything"}, {"ceiling", "ceiling"}, {"wedding", "wedding"},
      {"pudding", "pudding"}, {"hundred", "hundred"}, {"indeed", "indeed"},
      {"this", "this"}, {"his", "his"}, {"its", "its"}, {"yes", "yes"}, {"us", "we"},
      {"always", "always"}, {"perhaps", "perhaps"}, {"news", "news"},
      {"series", "series"}, {"species", "species"}, {"whereas", "whereas"},
      {"towards", "towards"}, {"afterwards", "afterwards"}, {"sometimes", "sometimes"},
      {"besides", "besides"}, {"less", "less"}, {"unless", "unless"},
      {"ones", "one"}, {"others", "other"}, {"lens", "lens"}, {"chaos", "chaos"},
      {"politics", "politics"}, {"physics", "physics"}, {"mathematics", "mathematics"},
      {"economics", "economics"}, {"thanks", "thanks"}, {"christmas", "christmas"},
      // irregular plurals
      {"feet", "foot"}, {"teeth", "tooth"}, {"geese", "goose"}, {"men", "man"},
      {"women", "woman"}, {"children", "child"}, {"mice", "mouse"}, {"lice", "louse"},
      {"oxen", "ox"}, {"wolves", "wolf"}, {"knives", "knife"}, {"wives", "wife"},
      {"lives", "life"}, {"leaves", "leaf"}, {"halves", "half"}, {"shelves", "shelf"},
      {"thieves", "thief"}, {"loaves", "loaf"}, {"calves", "calf"}, {"selves", "self"},
      {"criteria", "criterion"}, {"phenomena", "phenomenon"}, {"data", "data"},
      // pronoun case forms
      {"me", "i"}, {"him", "he"}, {"them", "they"}, {"her", "she"},
      {"better", "good"}, {"best", "good"}, {"worse", "bad"}, {"worst", "bad"},
  };
  return table;
}

const std::vector<WordTag>& pos_lexicon() {
  static const std::vector<WordTag> table = [] {
    std::vector<WordTag> t;
    auto add = [&t](Pos pos, std::initializer_list<std::string_view> words) {
      for (auto w : words) t.push_back({w, pos});
    };
    add(Pos::PRON, {"i", "me", "my", "mine", "myself", "you", "your", "yours", "yourself",
                    "he", "him", "his", "himself", "she", "her", "hers", "herself", "it",
                    "its", "itself", "we", "us", "our", "ours", "ourselves", "they", "them",
                    "their", "theirs", "themselves", "someone", "somebody", "anyone",
                    "anybody", "everyone", "everybody", "nobody", "one's", "who", "whom",
                    "whose", "what", "something", "anything", "nothing", "everything"});
    add(Pos::DET, {"a", "an", "the", "this", "that", "these", "those", "some", "any",
                   "each", "every", "no", "both", "either", "neither", "all", "another",
                   "such", "which", "whatever"});
    add(Pos::ADP, {"at", "in", "on", "of", "to", "for", "with", "by", "from", "about",
                   "into", "onto", "over", "under", "above", "below", "between", "among",
                   "through", "across", "against", "around", "behind", "beyond", "during",
                   "without", "within", "upon", "toward", "towards", "off", "out", "up",
                   "down", "like", "after", "before", "since", "until", "near", "past"});
    add(Pos::X, {"and", "or", "but", "nor", "so", "yet", "if", "because", "although",
                 "though", "while", "whereas", "unless", "whether", "than", "'s"});
    add(Pos::INTJ, {"oh", "well", "yes", "yeah", "hey", "hello", "wow", "okay", "ok",
                    "please", "thanks", "alas", "ah", "uh", "um"});
    add(Pos::ADV, {"not", "n't", "very", "too", "also", "just", "only", "even", "still",
                   "already", "always", "never", "ever", "often", "sometimes", "usually",
                   "really", "quite", "rather", "almost", "again", "here", "there", "then",
                   "now", "soon", "today", "yesterday", "tomorrow", "perhaps", "maybe",
                   "indeed", "desperately", "completely", "anxiously", "excitedly",
                   "hopefully", "financially", "finally", "quickly", "slowly", "suddenly",
                   "together", "away", "back", "ahead", "once", "twice", "later", "far",
                   "how", "why", "when", "where", "instead", "however", "therefore",
                   "probably", "certainly", "clearly", "simply", "exactly", "nearly"});
    add(Pos::VERB, {"be", "have", "do", "will", "would", "can", "could", "shall", "should",
                    "may", "might", "must", "go", "get", "make", "take", "come", "see",
                    "know", "think", "say", "tell", "give", "find", "keep", "leave", "feel",
                    "bring", "buy", "catch", "teach", "fight", "seek", "throw", "grow",
                    "draw", "fly", "blow", "break", "speak", "choose", "write", "ride",
                    "rise", "drive", "eat", "fall", "forget", "begin", "drink", "sing",
                    "swim", "run", "sit", "stand", "understand", "lose", "hold", "hear",
                    "meet", "pay", "lay", "lead", "send", "spend", "build", "lend", "bend",
                    "mean", "sleep", "sweep", "win", "hang", "shake", "wake", "wear",
                    "tear", "swear", "steal", "freeze", "hide", "bite", "strike", "stick",
                    "sink", "shoot", "feed", "flee", "slide", "dig", "spin", "swing",
                    "sell", "become", "add", "pour", "grasp", "open", "close", "call",
                    "beat", "bite", "burn", "cut", "pull", "push", "put", "set", "let",
                    "turn", "play", "work", "try", "ask", "need", "want", "use", "look",
                    "seem", "help", "talk", "start", "show", "move", "live", "believe",
                    "happen", "wait", "hope", "complain", "dare", "blame", "persist",
                    "prefer", "drift", "suffer", "comment", "jump", "kick", "spill",
                    "miss", "hit", "face", "cross", "bury", "break", "turn", "wash",
                    "stir", "rock", "rain", "cost", "chew", "bark", "bite", "cry",
                    "sit", "walk", "learn", "love", "hate", "like", "watch", "read",
                    "follow", "change", "lie", "die", "kill", "save", "carry", "raise",
                    "pass", "fill", "point", "touch", "mind", "reach", "pick", "drop"});
    add(Pos::NOUN, {"time", "people", "way", "day", "man", "woman", "thing", "life",
                    "child", "world", "hand", "part", "eye", "place", "week", "case",
                    "point", "number", "group", "problem", "fact", "lesson", "fire",
                    "fuel", "flame", "gasoline", "gas", "straw", "floodgate", "arm",
                    "length", "foot", "feet", "toe", "bush", "breath", "sword", "media",
                    "farmer", "rhyme", "meter", "swagger", "playwright", "friend",
                    "doctor", "hospital", "sociology", "mind", "insult", "injury",
                    "dilemma", "situation", "bluff", "water", "bridge", "ice", "cake",
                    "dog", "cat", "house", "money", "head", "heart", "door", "morning",
                    "evening", "night", "year", "home", "road", "book", "word", "name",
                    "side", "end", "idea", "question", "game", "sake", "god"});
    add(Pos::ADJ, {"good", "bad", "new", "old", "great", "big", "small", "long", "short",
                   "high", "low", "important", "bizarre", "cool", "difficult", "easy",
                   "hard", "serious", "different", "same", "other", "last", "first",
                   "next", "young", "little", "own", "right", "wrong", "sure", "true",
                   "false", "full", "empty", "floating", "old", "whole", "anxious",
                   "excited", "happy", "sad", "nervous", "bated", "double-edged"});
    return t;
  }();
  return table;
}

const std::vector<std::string_view>& stopwords() {
  static const std::vector<std::string_view> table{
      "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your", "yours",
      "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers",
      "herself", "it", "its", "itself", "they", "them", "their", "theirs", "themselves",
      "what", "which", "who", "whom", "this", "that", "these", "those", "am", "is", "are",
      "was", "were", "be", "been", "being", "have", "has", "had", "having", "do", "does",
      "did", "doing", "a", "an", "the", "and", "but", "if", "or", "because", "as", "until",
      "while", "of", "at", "by", "for", "with", "about", "against", "between", "into",
      "through", "during", "before", "after", "above", "below", "to", "from", "up", "down",
      "in", "out", "on", "off", "over", "under", "again", "further", "then", "once", "here",
      "there", "when", "where", "why", "how", "all", "any", "both", "each", "few", "more",
      "most", "other", "some", "such", "no", "nor", "not", "only", "own", "same", "so",
      "than", "too", "very", "can", "will", "just", "should", "now", "'s", "n't", "would",
      "could", "'ll", "'re", "'ve", "'d", "'m",
  };
  return table;
}

}  // namespace idiomatch::data

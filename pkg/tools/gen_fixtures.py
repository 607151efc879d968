#!/usr/bin/env python3
"""Generate the Spanish-English fixture corpus under fixtures/spa-eng/.

Everything test suites and demos consume is derived from the tables in
this file: a vocabulary with lemmas, POS, features and glosses, plus
authored sentences per domain.  Regeneration is deterministic.
"""

from __future__ import annotations

import json
import unicodedata
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
OUT = ROOT / "fixtures" / "spa-eng"

NAMES = {"darvel": "Darvel", "quilor": "Quilor", "nerim": "Nerim",
         "tavola": "Tavola", "milven": "Milven"}

NE_LABELS = {"Darvel": "PER", "Quilor": "LOC", "Nerim": "PER",
             "Tavola": "LOC", "Milven": "PER"}

# surface -> (lemma, upos, feats, comma-separated glosses)
VOCAB = {
    # articles and determiners
    "el": ("el", "DET", "Definite=Def|Gender=Masc|Number=Sing", "the"),
    "la": ("el", "DET", "Definite=Def|Gender=Fem|Number=Sing", "the"),
    "los": ("el", "DET", "Definite=Def|Gender=Masc|Number=Plur", "the"),
    "las": ("el", "DET", "Definite=Def|Gender=Fem|Number=Plur", "the"),
    "un": ("uno", "DET", "Definite=Ind|Gender=Masc|Number=Sing", "a,one"),
    "una": ("uno", "DET", "Definite=Ind|Gender=Fem|Number=Sing", "a,one"),
    "este": ("este", "DET", "Gender=Masc|Number=Sing", "this"),
    "esta": ("este", "DET", "Gender=Fem|Number=Sing", "this"),
    "aquel": ("aquel", "DET", "Gender=Masc|Number=Sing", "that"),
    "otra": ("otro", "DET", "Gender=Fem|Number=Sing", "another,other"),
    "mi": ("mi", "DET", "Number=Sing|Person=1|Poss=Yes", "my"),
    "mis": ("mi", "DET", "Number=Plur|Person=1|Poss=Yes", "my"),
    "su": ("su", "DET", "Number=Sing|Person=3|Poss=Yes", "her,his"),
    "sus": ("su", "DET", "Number=Plur|Person=3|Poss=Yes", "your,their"),
    "nuestra": ("nuestro", "DET", "Gender=Fem|Number=Sing|Person=1|Poss=Yes", "our"),
    "cada": ("cada", "DET", "Number=Sing", "each,every"),
    "muchas": ("mucho", "DET", "Gender=Fem|Number=Plur", "many"),
    # nouns
    "ministro": ("ministro", "NOUN", "Gender=Masc|Number=Sing", "minister"),
    "plan": ("plan", "NOUN", "Gender=Masc|Number=Sing", "plan"),
    "ciudad": ("ciudad", "NOUN", "Gender=Fem|Number=Sing", "city"),
    "escuela": ("escuela", "NOUN", "Gender=Fem|Number=Sing", "school"),
    "gobierno": ("gobierno", "NOUN", "Gender=Masc|Number=Sing", "government"),
    "ley": ("ley", "NOUN", "Gender=Fem|Number=Sing", "law"),
    "lunes": ("lunes", "NOUN", "Gender=Masc|Number=Sing", "Monday"),
    "precios": ("precio", "NOUN", "Gender=Masc|Number=Plur", "prices"),
    "vez": ("vez", "NOUN", "Gender=Fem|Number=Sing", "time,occasion"),
    "año": ("año", "NOUN", "Gender=Masc|Number=Sing", "year"),
    "empresa": ("empresa", "NOUN", "Gender=Fem|Number=Sing", "company"),
    "coches": ("coche", "NOUN", "Gender=Masc|Number=Plur", "cars"),
    "marzo": ("marzo", "NOUN", "Gender=Masc|Number=Sing", "March"),
    "presidente": ("presidente", "NOUN", "Gender=Masc|Number=Sing", "president"),
    "región": ("región", "NOUN", "Gender=Fem|Number=Sing", "region"),
    "norte": ("norte", "NOUN", "Gender=Masc|Number=Sing", "north"),
    "lluvias": ("lluvia", "NOUN", "Gender=Fem|Number=Plur", "rains"),
    "daños": ("daño", "NOUN", "Gender=Masc|Number=Plur", "damage"),
    "pueblos": ("pueblo", "NOUN", "Gender=Masc|Number=Plur", "villages,towns"),
    "banco": ("banco", "NOUN", "Gender=Masc|Number=Sing", "bank,bench"),
    "tasas": ("tasa", "NOUN", "Gender=Fem|Number=Plur", "rates"),
    "interés": ("interés", "NOUN", "Gender=Masc|Number=Sing", "interest"),
    "policía": ("policía", "NOUN", "Gender=Fem|Number=Sing", "police"),
    "camión": ("camión", "NOUN", "Gender=Masc|Number=Sing", "truck"),
    "museo": ("museo", "NOUN", "Gender=Masc|Number=Sing", "museum"),
    "visitantes": ("visitante", "NOUN", "Number=Plur", "visitors"),
    "señora": ("señora", "NOUN", "Gender=Fem|Number=Sing", "Mrs,lady"),
    "elecciones": ("elección", "NOUN", "Gender=Fem|Number=Plur", "elections"),
    "puerto": ("puerto", "NOUN", "Gender=Masc|Number=Sing", "port,harbor"),
    "tormenta": ("tormenta", "NOUN", "Gender=Fem|Number=Sing", "storm"),
    "médicos": ("médico", "NOUN", "Gender=Masc|Number=Plur", "doctors"),
    "recursos": ("recurso", "NOUN", "Gender=Masc|Number=Plur", "resources"),
    "tacos": ("taco", "NOUN", "Gender=Masc|Number=Plur", "tacos"),
    "amigos": ("amigo", "NOUN", "Gender=Masc|Number=Plur", "friends"),
    "viernes": ("viernes", "NOUN", "Gender=Masc|Number=Sing", "Friday"),
    "gato": ("gato", "NOUN", "Gender=Masc|Number=Sing", "cat"),
    "teclado": ("teclado", "NOUN", "Gender=Masc|Number=Sing", "keyboard"),
    "café": ("café", "NOUN", "Gender=Masc|Number=Sing", "coffee"),
    "tarde": ("tarde", "NOUN", "Gender=Fem|Number=Sing", "afternoon,late"),
    "juego": ("juego", "NOUN", "Gender=Masc|Number=Sing", "game"),
    "autobús": ("autobús", "NOUN", "Gender=Masc|Number=Sing", "bus"),
    "trabajo": ("trabajo", "NOUN", "Gender=Masc|Number=Sing", "work,job"),
    "película": ("película", "NOUN", "Gender=Fem|Number=Sing", "movie,film"),
    "playa": ("playa", "NOUN", "Gender=Fem|Number=Sing", "beach"),
    "fin": ("fin", "NOUN", "Gender=Masc|Number=Sing", "end"),
    "semana": ("semana", "NOUN", "Gender=Fem|Number=Sing", "week"),
    "hermana": ("hermana", "NOUN", "Gender=Fem|Number=Sing", "sister"),
    "bicicleta": ("bicicleta", "NOUN", "Gender=Fem|Number=Sing", "bicycle"),
    "día": ("día", "NOUN", "Gender=Masc|Number=Sing", "day"),
    "días": ("día", "NOUN", "Gender=Masc|Number=Plur", "days"),
    "parque": ("parque", "NOUN", "Gender=Masc|Number=Sing", "park"),
    "restaurante": ("restaurante", "NOUN", "Gender=Masc|Number=Sing", "restaurant"),
    "sopa": ("sopa", "NOUN", "Gender=Fem|Number=Sing", "soup"),
    "casa": ("casa", "NOUN", "Gender=Fem|Number=Sing", "house,home"),
    "secreto": ("secreto", "NOUN", "Gender=Masc|Number=Sing", "secret"),
    "viento": ("viento", "NOUN", "Gender=Masc|Number=Sing", "wind"),
    "hojas": ("hoja", "NOUN", "Gender=Fem|Number=Plur", "leaves"),
    "jardín": ("jardín", "NOUN", "Gender=Masc|Number=Sing", "garden"),
    "mar": ("mar", "NOUN", "Gender=Masc|Number=Sing", "sea"),
    "horas": ("hora", "NOUN", "Gender=Fem|Number=Plur", "hours"),
    "luna": ("luna", "NOUN", "Gender=Fem|Number=Sing", "moon"),
    "cuarto": ("cuarto", "NOUN", "Gender=Masc|Number=Sing", "room,quarter"),
    "luz": ("luz", "NOUN", "Gender=Fem|Number=Sing", "light"),
    "voz": ("voz", "NOUN", "Gender=Fem|Number=Sing", "voice"),
    "campana": ("campana", "NOUN", "Gender=Fem|Number=Sing", "bell"),
    "camino": ("camino", "NOUN", "Gender=Masc|Number=Sing", "road,path"),
    "montaña": ("montaña", "NOUN", "Gender=Fem|Number=Sing", "mountain"),
    "nombre": ("nombre", "NOUN", "Gender=Masc|Number=Sing", "name"),
    "río": ("río", "NOUN", "Gender=Masc|Number=Sing", "river"),
    "cartas": ("carta", "NOUN", "Gender=Fem|Number=Plur", "letters"),
    "cajón": ("cajón", "NOUN", "Gender=Masc|Number=Sing", "drawer"),
    "reloj": ("reloj", "NOUN", "Gender=Masc|Number=Sing", "clock,watch"),
    "medianoche": ("medianoche", "NOUN", "Gender=Fem|Number=Sing", "midnight"),
    "silencio": ("silencio", "NOUN", "Gender=Masc|Number=Sing", "silence"),
    "perro": ("perro", "NOUN", "Gender=Masc|Number=Sing", "dog"),
    "puerta": ("puerta", "NOUN", "Gender=Fem|Number=Sing", "door"),
    "nieve": ("nieve", "NOUN", "Gender=Fem|Number=Sing", "snow"),
    "tejados": ("tejado", "NOUN", "Gender=Masc|Number=Plur", "roofs"),
    "verano": ("verano", "NOUN", "Gender=Masc|Number=Sing", "summer"),
    "lago": ("lago", "NOUN", "Gender=Masc|Number=Sing", "lake"),
    "abuela": ("abuela", "NOUN", "Gender=Fem|Number=Sing", "grandmother"),
    "historias": ("historia", "NOUN", "Gender=Fem|Number=Plur", "stories"),
    "bosque": ("bosque", "NOUN", "Gender=Masc|Number=Sing", "forest"),
    "gracias": ("gracias", "NOUN", "Gender=Fem|Number=Plur", "thanks,thank you"),
    "futuro": ("futuro", "NOUN", "Gender=Masc|Number=Sing", "future"),
    "vecinos": ("vecino", "NOUN", "Gender=Masc|Number=Plur", "neighbors"),
    "proyecto": ("proyecto", "NOUN", "Gender=Masc|Number=Sing", "project"),
    "tiempo": ("tiempo", "NOUN", "Gender=Masc|Number=Sing", "time,weather"),
    "apoyo": ("apoyo", "NOUN", "Gender=Masc|Number=Sing", "support"),
    "noche": ("noche", "NOUN", "Gender=Fem|Number=Sing", "night"),
    "educación": ("educación", "NOUN", "Gender=Fem|Number=Sing", "education"),
    "base": ("base", "NOUN", "Gender=Fem|Number=Sing", "foundation,base"),
    "verdad": ("verdad", "NOUN", "Gender=Fem|Number=Sing", "truth"),
    "familia": ("familia", "NOUN", "Gender=Fem|Number=Sing", "family"),
    "doctor": ("doctor", "NOUN", "Gender=Masc|Number=Sing", "doctor"),
    "preguntas": ("pregunta", "NOUN", "Gender=Fem|Number=Plur", "questions"),
    "atención": ("atención", "NOUN", "Gender=Fem|Number=Sing", "attention"),
    # verbs
    "anunció": ("anunciar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "announced"),
    "abrió": ("abrir", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "opened"),
    "aprobó": ("aprobar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "approved"),
    "subieron": ("subir", "VERB", "Mood=Ind|Number=Plur|Person=3|Tense=Past", "rose,climbed"),
    "vendió": ("vender", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "sold"),
    "visitó": ("visitar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "visited"),
    "causaron": ("causar", "VERB", "Mood=Ind|Number=Plur|Person=3|Tense=Past", "caused"),
    "redujo": ("reducir", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "reduced"),
    "encontró": ("encontrar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "found"),
    "recibió": ("recibir", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "received"),
    "ganó": ("ganar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "won"),
    "cerró": ("cerrar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "closed"),
    "pidieron": ("pedir", "VERB", "Mood=Ind|Number=Plur|Person=3|Tense=Past", "asked,requested"),
    "comí": ("comer", "VERB", "Mood=Ind|Number=Sing|Person=1|Tense=Past", "ate"),
    "puedo": ("poder", "VERB", "Mood=Ind|Number=Sing|Person=1|Tense=Pres", "can"),
    "creer": ("creer", "VERB", "VerbForm=Inf", "believe"),
    "es": ("ser", "AUX", "Mood=Ind|Number=Sing|Person=3|Tense=Pres", "is"),
    "durmió": ("dormir", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "slept"),
    "quiere": ("querer", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Pres", "wants"),
    "perdí": ("perder", "VERB", "Mood=Ind|Number=Sing|Person=1|Tense=Past", "missed,lost"),
    "llegué": ("llegar", "VERB", "Mood=Ind|Number=Sing|Person=1|Tense=Past", "arrived"),
    "encantó": ("encantar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "delighted"),
    "vamos": ("ir", "VERB", "Mood=Ind|Number=Plur|Person=1|Tense=Pres", "go,are going"),
    "compró": ("comprar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "bought"),
    "caminar": ("caminar", "VERB", "VerbForm=Inf", "walk"),
    "necesito": ("necesitar", "VERB", "Mood=Ind|Number=Sing|Person=1|Tense=Pres", "need"),
    "dormir": ("dormir", "VERB", "VerbForm=Inf", "sleep"),
    "tiene": ("tener", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Pres", "has"),
    "guardaba": ("guardar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "kept"),
    "movía": ("mover", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "moved"),
    "miró": ("mirar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "watched,looked at"),
    "llenaba": ("llenar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "filled"),
    "sonaba": ("sonar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "sounded"),
    "subía": ("subir", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "climbed,rose"),
    "recordaba": ("recordar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "remembered"),
    "dormían": ("dormir", "VERB", "Mood=Ind|Number=Plur|Person=3|Tense=Imp", "slept"),
    "marcó": ("marcar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "struck,marked"),
    "esperaba": ("esperar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "waited"),
    "cubrió": ("cubrir", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Past", "covered"),
    "aprendimos": ("aprender", "VERB", "Mood=Ind|Number=Plur|Person=1|Tense=Past", "learned"),
    "nadar": ("nadar", "VERB", "VerbForm=Inf", "swim"),
    "contaba": ("contar", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Imp", "told,counted"),
    "venir": ("venir", "VERB", "VerbForm=Inf", "come"),
    "quiero": ("querer", "VERB", "Mood=Ind|Number=Sing|Person=1|Tense=Pres", "want"),
    "hablar": ("hablar", "VERB", "VerbForm=Inf", "speak,talk"),
    "debemos": ("deber", "VERB", "Mood=Ind|Number=Plur|Person=1|Tense=Pres", "must,should"),
    "escuchar": ("escuchar", "VERB", "VerbForm=Inf", "listen,listen to"),
    "puede": ("poder", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Pres", "can"),
    "cambiar": ("cambiar", "VERB", "VerbForm=Inf", "change"),
    "tenemos": ("tener", "VERB", "Mood=Ind|Number=Plur|Person=1|Tense=Pres", "have"),
    "esperar": ("esperar", "VERB", "VerbForm=Inf", "wait"),
    "pido": ("pedir", "VERB", "Mood=Ind|Number=Sing|Person=1|Tense=Pres", "ask,ask for"),
    "podemos": ("poder", "VERB", "Mood=Ind|Number=Plur|Person=1|Tense=Pres", "can"),
    "construir": ("construir", "VERB", "VerbForm=Inf", "build"),
    "empezamos": ("empezar", "VERB", "Mood=Ind|Number=Plur|Person=1|Tense=Pres", "start,begin"),
    "merece": ("merecer", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Pres", "deserves"),
    "responderá": ("responder", "VERB", "Mood=Ind|Number=Sing|Person=3|Tense=Fut", "will answer"),
    # adjectives
    "nuevo": ("nuevo", "ADJ", "Gender=Masc|Number=Sing", "new"),
    "moderna": ("moderno", "ADJ", "Gender=Fem|Number=Sing", "modern"),
    "locales": ("local", "ADJ", "Number=Plur", "local"),
    "robado": ("robar", "ADJ", "Gender=Masc|Number=Sing|VerbForm=Part", "stolen"),
    "increíble": ("increíble", "ADJ", "Number=Sing", "incredible"),
    "azul": ("azul", "ADJ", "Number=Sing", "blue"),
    "lindo": ("lindo", "ADJ", "Gender=Masc|Number=Sing", "nice,pretty"),
    "mejor": ("mejor", "ADJ", "Number=Sing", "better,best"),
    "vieja": ("viejo", "ADJ", "Gender=Fem|Number=Sing", "old"),
    "lejana": ("lejano", "ADJ", "Gender=Fem|Number=Sing", "distant"),
    "cerrado": ("cerrar", "ADJ", "Gender=Masc|Number=Sing|VerbForm=Part", "closed"),
    "gris": ("gris", "ADJ", "Number=Sing", "grey"),
    "buenos": ("bueno", "ADJ", "Gender=Masc|Number=Plur", "good"),
    "digna": ("digno", "ADJ", "Gender=Fem|Number=Sing", "decent,worthy"),
    "juntos": ("junto", "ADJ", "Gender=Masc|Number=Plur", "together"),
    # adverbs, pronouns, function words
    "no": ("no", "ADV", "Polarity=Neg", "not,no"),
    "ya": ("ya", "ADV", "", "already"),
    "hoy": ("hoy", "ADV", "", "today"),
    "casi": ("casi", "ADV", "", "almost"),
    "más": ("más", "ADV", "", "more"),
    "ayer": ("ayer", "ADV", "", "yesterday"),
    "despacio": ("despacio", "ADV", "", "slowly"),
    "junto": ("junto", "ADV", "", "next,by"),
    "primero": ("primero", "ADV", "", "first"),
    "mañana": ("mañana", "ADV", "", "tomorrow,morning"),
    "anoche": ("anoche", "ADV", "", "last night"),
    "qué": ("qué", "PRON", "PronType=Int", "what"),
    "alguien": ("alguien", "PRON", "PronType=Ind", "someone,anyone"),
    "nadie": ("nadie", "PRON", "PronType=Neg", "nobody"),
    "ella": ("él", "PRON", "Case=Nom|Gender=Fem|Number=Sing|Person=3", "she"),
    "me": ("yo", "PRON", "Case=Acc|Number=Sing|Person=1", "me"),
    "les": ("él", "PRON", "Case=Dat|Number=Plur|Person=3", "them,you"),
    "que": ("que", "SCONJ", "", "that"),
    "y": ("y", "CCONJ", "", "and"),
    "como": ("como", "SCONJ", "", "like,as"),
    "todo": ("todo", "PRON", "Gender=Masc|Number=Sing", "everything,all"),
    "algo": ("algo", "PRON", "PronType=Ind", "something"),
    "mil": ("mil", "NUM", "NumType=Card", "thousand"),
    "tres": ("tres", "NUM", "NumType=Card", "three"),
    # adpositions
    "en": ("en", "ADP", "", "in,on"),
    "de": ("de", "ADP", "", "of,from"),
    "del": ("del", "ADP", "Definite=Def|Gender=Masc|Number=Sing", "of the"),
    "al": ("al", "ADP", "Definite=Def|Gender=Masc|Number=Sing", "to the"),
    "con": ("con", "ADP", "", "with"),
    "por": ("por", "ADP", "", "for,because of"),
    "para": ("para", "ADP", "", "for,to"),
    "sobre": ("sobre", "ADP", "", "on,about"),
    "durante": ("durante", "ADP", "", "during,for"),
    "hacia": ("hacia", "ADP", "", "toward"),
    "a": ("a", "ADP", "", "to,at"),
}

# lemma -> glosses; these become the infinitive entries of the lexicon so
# lemma-keyed lookups have something to find
LEMMA_GLOSSES = {
    "anunciar": "announce", "abrir": "open", "aprobar": "approve",
    "subir": "rise,climb", "vender": "sell", "visitar": "visit",
    "causar": "cause", "reducir": "reduce", "encontrar": "find",
    "recibir": "receive", "ganar": "win", "cerrar": "close",
    "pedir": "ask,request", "comer": "eat", "poder": "can,be able",
    "creer": "believe", "ser": "be", "dormir": "sleep",
    "querer": "want", "perder": "lose,miss", "llegar": "arrive",
    "encantar": "delight", "ir": "go", "comprar": "buy",
    "caminar": "walk", "necesitar": "need", "tener": "have",
    "guardar": "keep", "mover": "move", "mirar": "look,watch",
    "llenar": "fill", "sonar": "sound", "recordar": "remember",
    "marcar": "mark,strike", "esperar": "wait,hope", "cubrir": "cover",
    "aprender": "learn", "nadar": "swim", "contar": "tell,count",
    "venir": "come", "hablar": "speak,talk", "deber": "must,owe",
    "escuchar": "listen", "cambiar": "change", "construir": "build",
    "empezar": "start,begin", "merecer": "deserve",
    "responder": "answer,respond",
}

# Surfaces deliberately left out of the working lexicon so fuzzy and
# lemma-keyed lookups have work to do.  The oracle lexicon still covers
# them.
EXCLUDED_SURFACES = {
    "anunció", "subieron", "pidieron", "durmió", "perdí", "llegué",
    "encantó", "guardaba", "movía", "llenaba", "sonaba", "subía",
    "recordaba", "dormían", "marcó", "esperaba", "cubrió", "aprendimos",
    "contaba", "merece", "responderá", "tejados", "cajón", "medianoche",
}

# (domain, spanish, english)
SENTENCES = [
    ("news", "El ministro anunció un plan nuevo.", "The minister announced a new plan."),
    ("news", "La ciudad abrió una escuela moderna.", "The city opened a modern school."),
    ("news", "El gobierno aprobó la ley el lunes.", "The government approved the law on Monday."),
    ("news", "Los precios subieron otra vez este año.", "Prices rose again this year."),
    ("news", "La empresa vendió mil coches en marzo.", "The company sold a thousand cars in March."),
    ("news", "El presidente visitó la región del norte.", "The president visited the northern region."),
    ("news", "Las lluvias causaron daños en tres pueblos.", "The rains caused damage in three villages."),
    ("news", "El banco redujo las tasas de interés.", "The bank reduced interest rates."),
    ("news", "La policía encontró el camión robado.", "The police found the stolen truck."),
    ("news", "El museo recibió casi mil visitantes.", "The museum received almost a thousand visitors."),
    ("news", "La señora Darvel ganó las elecciones locales.", "Mrs Darvel won the local elections."),
    ("news", "El puerto de Quilor cerró por la tormenta.", "The port of Quilor closed because of the storm."),
    ("news", "Los médicos pidieron más recursos ayer.", "The doctors asked for more resources yesterday."),
    ("social", "Hoy comí tacos con mis amigos.", "Today I ate tacos with my friends."),
    ("social", "No puedo creer que ya es viernes.", "I cannot believe it is already Friday."),
    ("social", "Mi gato durmió sobre mi teclado otra vez.", "My cat slept on my keyboard again."),
    ("social", "¿Alguien quiere café esta tarde?", "Does anyone want coffee this afternoon?"),
    ("social", "Este juego nuevo es increíble.", "This new game is incredible."),
    ("social", "Perdí el autobús y llegué tarde al trabajo.", "I missed the bus and arrived late to work."),
    ("social", "La película de anoche me encantó.", "I loved last night's movie."),
    ("social", "Vamos a la playa este fin de semana.", "We are going to the beach this weekend."),
    ("social", "Mi hermana compró una bicicleta azul.", "My sister bought a blue bicycle."),
    ("social", "Qué lindo día para caminar por el parque.", "What a nice day for a walk in the park."),
    ("social", "Necesito dormir más esta semana.", "I need to sleep more this week."),
    ("social", "El restaurante de Nerim tiene la mejor sopa.", "Nerim's restaurant has the best soup."),
    ("literary", "La casa vieja guardaba un secreto.", "The old house kept a secret."),
    ("literary", "El viento movía las hojas del jardín.", "The wind moved the leaves of the garden."),
    ("literary", "Ella miró el mar durante horas.", "She watched the sea for hours."),
    ("literary", "La luna llenaba el cuarto de luz.", "The moon filled the room with light."),
    ("literary", "Su voz sonaba como una campana lejana.", "Her voice sounded like a distant bell."),
    ("literary", "El camino subía despacio hacia la montaña.", "The road climbed slowly toward the mountain."),
    ("literary", "Nadie recordaba el nombre del río.", "Nobody remembered the name of the river."),
    ("literary", "Las cartas dormían en un cajón cerrado.", "The letters slept in a closed drawer."),
    ("literary", "El reloj marcó la medianoche en silencio.", "The clock struck midnight in silence."),
    ("literary", "Un perro gris esperaba junto a la puerta.", "A grey dog waited by the door."),
    ("literary", "La nieve cubrió los tejados de Tavola.", "The snow covered the roofs of Tavola."),
    ("literary", "Aquel verano aprendimos a nadar en el lago.", "That summer we learned to swim in the lake."),
    ("literary", "Su abuela contaba historias del bosque.", "Her grandmother told stories of the forest."),
    ("speech", "Buenos días, gracias por venir hoy.", "Good morning, thank you for coming today."),
    ("speech", "Quiero hablar sobre el futuro de la escuela.", "I want to talk about the future of the school."),
    ("speech", "Primero, debemos escuchar a los vecinos.", "First, we must listen to the neighbors."),
    ("speech", "Este proyecto puede cambiar nuestra ciudad.", "This project can change our city."),
    ("speech", "No tenemos tiempo para esperar más.", "We do not have time to wait longer."),
    ("speech", "Les pido su apoyo esta noche.", "I ask for your support tonight."),
    ("speech", "Juntos podemos construir algo mejor.", "Together we can build something better."),
    ("speech", "La educación es la base de todo.", "Education is the foundation of everything."),
    ("speech", "Mañana empezamos el trabajo de verdad.", "Tomorrow we start the real work."),
    ("speech", "Cada familia merece una casa digna.", "Every family deserves a decent home."),
    ("speech", "El doctor Milven responderá sus preguntas.", "Doctor Milven will answer your questions."),
    ("speech", "Muchas gracias por su atención.", "Thank you very much for your attention."),
]

EXEMPLARS = [
    ("news", "El ministro visitó la escuela.", "The minister visited the school."),
    ("news", "La ciudad aprobó un plan moderno.", "The city approved a modern plan."),
    ("news", "El banco anunció tasas nuevas.", "The bank announced new rates."),
    ("news", "Los precios subieron en marzo.", "Prices rose in March."),
    ("news", "La empresa abrió una oficina en el norte.", "The company opened an office in the north."),
    ("news", "El gobierno recibió el informe ayer.", "The government received the report yesterday."),
    ("news", "La policía cerró el puerto por la tormenta.", "The police closed the port because of the storm."),
    ("news", "El museo ganó un premio este año.", "The museum won a prize this year."),
    ("news", "Los médicos visitaron tres pueblos.", "The doctors visited three villages."),
    ("news", "La región vendió mil coches.", "The region sold a thousand cars."),
    ("social", "Hoy comí sopa con mi hermana.", "Today I ate soup with my sister."),
    ("social", "Mi gato quiere dormir sobre la bicicleta.", "My cat wants to sleep on the bicycle."),
    ("social", "No puedo esperar más esta semana.", "I cannot wait any longer this week."),
    ("social", "Este café nuevo es increíble.", "This new coffee is incredible."),
    ("social", "Perdí mis llaves otra vez.", "I lost my keys again."),
    ("social", "Vamos al parque esta tarde.", "We are going to the park this afternoon."),
    ("social", "La película me encantó anoche.", "I loved the movie last night."),
    ("social", "¿Alguien quiere caminar por la playa?", "Does anyone want to walk on the beach?"),
    ("social", "Necesito café para el trabajo.", "I need coffee for work."),
    ("social", "Mi amigo compró un juego nuevo.", "My friend bought a new game."),
    ("literary", "La luna miraba el mar en silencio.", "The moon watched the sea in silence."),
    ("literary", "El perro esperaba junto al río.", "The dog waited by the river."),
    ("literary", "Su voz llenaba la casa vieja.", "Her voice filled the old house."),
    ("literary", "El viento cubrió el camino de hojas.", "The wind covered the road with leaves."),
    ("literary", "Nadie recordaba aquel verano.", "Nobody remembered that summer."),
    ("literary", "Las cartas guardaban un secreto.", "The letters kept a secret."),
    ("literary", "La nieve dormía sobre la montaña.", "The snow slept on the mountain."),
    ("literary", "El reloj sonaba como una campana.", "The clock sounded like a bell."),
    ("literary", "Ella aprendió a nadar en el lago.", "She learned to swim in the lake."),
    ("literary", "Un gato gris miró la puerta cerrada.", "A grey cat looked at the closed door."),
    ("speech", "Gracias por escuchar esta noche.", "Thank you for listening tonight."),
    ("speech", "Quiero hablar sobre la educación.", "I want to talk about education."),
    ("speech", "Juntos podemos cambiar la ciudad.", "Together we can change the city."),
    ("speech", "Cada vecino merece apoyo.", "Every neighbor deserves support."),
    ("speech", "Mañana empezamos el proyecto.", "Tomorrow we start the project."),
    ("speech", "No tenemos tiempo para dormir.", "We do not have time to sleep."),
    ("speech", "Primero debemos construir la base.", "First we must build the foundation."),
    ("speech", "La verdad es nuestra mejor herramienta.", "The truth is our best tool."),
    ("speech", "Les pido su atención.", "I ask for your attention."),
    ("speech", "El futuro de la familia es todo.", "The future of the family is everything."),
]

PIVOT_EXEMPLARS = [
    ("news", "Le ministre a visité l'école.", "El ministro visitó la escuela."),
    ("news", "La ville a ouvert une école moderne.", "La ciudad abrió una escuela moderna."),
    ("news", "Les prix ont augmenté cette année.", "Los precios subieron este año."),
    ("social", "Mon chat a dormi sur le clavier.", "Mi gato durmió sobre el teclado."),
    ("speech", "Je veux parler de l'avenir de l'école.", "Quiero hablar sobre el futuro de la escuela."),
    ("literary", "Le vent couvrait le chemin de feuilles.", "El viento cubría el camino de hojas."),
    ("speech", "Merci pour votre attention.", "Muchas gracias por su atención."),
    ("literary", "La lune remplissait la chambre de lumière.", "La luna llenaba el cuarto de luz."),
    ("news", "Le gouvernement a approuvé la loi lundi.", "El gobierno aprobó la ley el lunes."),
    ("speech", "Ensemble, nous pouvons construire quelque chose de mieux.", "Juntos podemos construir algo mejor."),
]

PIVOT_LEXICON = {
    "le": "el", "la": "la", "les": "los", "un": "un", "une": "una",
    "ministre": "ministro", "ville": "ciudad", "école": "escuela",
    "gouvernement": "gobierno", "loi": "ley", "lundi": "lunes",
    "prix": "precios", "année": "año", "chat": "gato",
    "clavier": "teclado", "vent": "viento", "chemin": "camino",
    "feuilles": "hojas", "lune": "luna", "chambre": "cuarto",
    "lumière": "luz", "avenir": "futuro", "attention": "atención",
    "merci": "gracias", "nouveau": "nuevo", "moderne": "moderna",
    "annoncé": "anunció", "visité": "visitó", "ouvert": "abrió",
    "approuvé": "aprobó", "augmenté": "subieron", "dormi": "durmió",
    "couvrait": "cubría", "remplissait": "llenaba", "veux": "quiero",
    "parler": "hablar", "pouvons": "podemos", "construire": "construir",
    "ensemble": "juntos", "nous": "nosotros", "je": "yo", "mon": "mi",
    "votre": "su", "pour": "por", "de": "de", "sur": "sobre",
    "cette": "esta", "quelque": "algo", "chose": "cosa",
    "mieux": "mejor", "plan": "plan", "et": "y",
}

# Fixed pivot translations for the first samples; the replay transcript and
# the cascade goldens use these.
PIVOT_TEXTS = {
    "mt-0001": "Le ministre a annoncé un nouveau plan.",
    "mt-0002": "La ville a ouvert une école moderne.",
    "mt-0003": "Le gouvernement a approuvé la loi lundi.",
}

PIVOT_CONLLU = """\
# sent_id = mt-0001
# text = Le ministre a annoncé un nouveau plan.
1\tLe\tle\tDET\t_\tDefinite=Def|Gender=Masc|Number=Sing\t0\tdep\t_\t_
2\tministre\tministre\tNOUN\t_\tGender=Masc|Number=Sing\t0\tdep\t_\t_
3\ta\tavoir\tAUX\t_\tMood=Ind|Number=Sing|Person=3|Tense=Pres\t0\tdep\t_\t_
4\tannoncé\tannoncer\tVERB\t_\tGender=Masc|Number=Sing|Tense=Past|VerbForm=Part\t0\tdep\t_\t_
5\tun\tun\tDET\t_\tDefinite=Ind|Gender=Masc|Number=Sing\t0\tdep\t_\t_
6\tnouveau\tnouveau\tADJ\t_\tGender=Masc|Number=Sing\t0\tdep\t_\t_
7\tplan\tplan\tNOUN\t_\tGender=Masc|Number=Sing\t0\tdep\t_\tSpaceAfter=No
8\t.\t.\tPUNCT\t_\t_\t0\tdep\t_\t_

"""

ENG_CONLLU = """\
# sent_id = mt-0001
# text = The minister announced a new plan.
1\tThe\tthe\tDET\t_\tDefinite=Def\t0\tdep\t_\t_
2\tminister\tminister\tNOUN\t_\tNumber=Sing\t0\tdep\t_\t_
3\tannounced\tannounce\tVERB\t_\tMood=Ind|Tense=Past\t0\tdep\t_\t_
4\ta\ta\tDET\t_\tDefinite=Ind\t0\tdep\t_\t_
5\tnew\tnew\tADJ\t_\tDegree=Pos\t0\tdep\t_\t_
6\tplan\tplan\tNOUN\t_\tNumber=Sing\t0\tdep\t_\tSpaceAfter=No
7\t.\t.\tPUNCT\t_\t_\t0\tdep\t_\t_

# sent_id = mt-0022
# text = My sister bought a blue bicycle.
1\tMy\tmy\tPRON\t_\tNumber=Sing|Person=1|Poss=Yes\t0\tdep\t_\t_
2\tsister\tsister\tNOUN\t_\tNumber=Sing\t0\tdep\t_\t_
3\tbought\tbuy\tVERB\t_\tMood=Ind|Tense=Past\t0\tdep\t_\t_
4\ta\ta\tDET\t_\tDefinite=Ind\t0\tdep\t_\t_
5\tblue\tblue\tADJ\t_\tDegree=Pos\t0\tdep\t_\t_
6\tbicycle\tbicycle\tNOUN\t_\tNumber=Sing\t0\tdep\t_\tSpaceAfter=No
7\t.\t.\tPUNCT\t_\t_\t0\tdep\t_\t_

# sent_id = mt-0050
# text = Thank you very much for your attention.
1\tThank\tthank\tVERB\t_\tMood=Imp\t0\tdep\t_\t_
2\tyou\tyou\tPRON\t_\tPerson=2\t0\tdep\t_\t_
3\tvery\tvery\tADV\t_\t_\t0\tdep\t_\t_
4\tmuch\tmuch\tADV\t_\t_\t0\tdep\t_\t_
5\tfor\tfor\tADP\t_\t_\t0\tdep\t_\t_
6\tyour\tyour\tPRON\t_\tPerson=2|Poss=Yes\t0\tdep\t_\t_
7\tattention\tattention\tNOUN\t_\tNumber=Sing\t0\tdep\t_\tSpaceAfter=No
8\t.\t.\tPUNCT\t_\t_\t0\tdep\t_\t_

"""

SYNTAX_PROFILE = {
    "family": "Romance",
    "features": {
        "word_order": "Sentence-level word order (SVO): {cl_name} is typically SVO.",
        "object_verb": "Object-verb order: (VO) The verb precedes the object.",
        "adposition": "Order of Adposition and Noun Phrase (Preposition-Noun): This language uses prepositions placed before noun phrases.",
        "genitive": "Order of Genitive and Noun (Noun-Genitive): The genitive typically follows the noun.",
        "adjective": "Order of Adjective and Noun (Noun-Adjective): Adjectives typically follow the noun.",
        "relative_clause": "Order of Relative Clause and Noun (Noun-Relative clause): Relative clauses follow the noun they modify.",
        "interrogatives": "Interrogatives: Content questions use clause-initial interrogative phrases; polar questions are marked by intonation without a dedicated particle.",
        "negation": "Order of negation and verb (Neg-V): Negation is expressed by a particle immediately before the finite verb.",
    },
    "notes": [
        "Morphosyntactic profile: {cl_name} is moderately fusional, with gender and number agreement across the noun phrase.",
        "Verbal inflection profile: Verbs inflect for person, number, tense and mood; subject pronouns are frequently omitted.",
        "Other characteristics: Clitic pronouns attach to the verbal complex; agreement appears on determiners, adjectives and verbs.",
    ],
}

PARADIGMS = """\
Infinitival suffix: "<ar>", "<er>", "<ir>"
Running examples (regular): "<hablar>" (<ar>), "<comer>" (<er>), "<vivir>" (<ir>)
Present:
(<ar> verbs)
- "<o>" (1st person singular) example: "<hablo>"
- "<as>" (2nd person singular) example: "<hablas>"
- "<a>" (3rd person singular) example: "<habla>"
- "<amos>" (1st person plural) example: "<hablamos>"
- "<an>" (3rd person plural) example: "<hablan>"
(<er> verbs)
- "<o>" (1st person singular) example: "<como>"
- "<es>" (2nd person singular) example: "<comes>"
- "<e>" (3rd person singular) example: "<come>"
- "<emos>" (1st person plural) example: "<comemos>"
- "<en>" (3rd person plural) example: "<comen>"
Simple Past:
(<ar> verbs)
- "<é>" (1st person singular) example: "<hablé>"
- "<aste>" (2nd person singular) example: "<hablaste>"
- "<ó>" (3rd person singular) example: "<habló>"
- "<amos>" (1st person plural) example: "<hablamos>"
- "<aron>" (3rd person plural) example: "<hablaron>"
(<er>/<ir> verbs)
- "<í>" (1st person singular) example: "<comí>"
- "<iste>" (2nd person singular) example: "<comiste>"
- "<ió>" (3rd person singular) example: "<comió>"
- "<imos>" (1st person plural) example: "<comimos>"
- "<ieron>" (3rd person plural) example: "<comieron>"
Past participle endings:
- "<ado>" (<ar> verbs) example: "<hablado>"
- "<ido>" (<er>/<ir> verbs) example: "<comido>"
You must conjugate the verb according to the subject's person and number.
"""

NLI_ITEMS = [
    ("El perro duerme en la casa.", "El perro está dormido.", 0),
    ("La niña come una manzana.", "La niña come fruta.", 0),
    ("El tren llegó tarde hoy.", "El tren llegó temprano hoy.", 2),
    ("Mi hermano compró un coche rojo.", "Mi hermano no compró nada.", 2),
    ("La mujer canta en el teatro.", "La mujer es famosa.", 1),
    ("El hombre lee el periódico.", "El hombre lee noticias de deportes.", 1),
    ("Los niños juegan en el parque.", "Los niños están fuera.", 0),
    ("La tienda cierra a las nueve.", "La tienda nunca cierra.", 2),
    ("El cocinero prepara sopa caliente.", "El cocinero prepara comida.", 0),
    ("La profesora habla tres idiomas.", "La profesora enseña matemáticas.", 1),
    ("El gato blanco duerme en el sofá.", "El gato es negro.", 2),
    ("El agricultor vende tomates en el mercado.", "El agricultor es rico.", 1),
]

NLI_EXEMPLARS = [
    ("El niño bebe agua fría.", "El niño bebe algo.", 0),
    ("La casa es grande y blanca.", "La casa es pequeña.", 2),
    ("El pájaro canta por la mañana.", "El pájaro es amarillo.", 1),
    ("Los estudiantes leen muchos libros.", "Los estudiantes leen.", 0),
    ("El mercado abre los sábados.", "El mercado está cerrado los sábados.", 2),
    ("La doctora trabaja en el hospital.", "La doctora tiene dos hijos.", 1),
]

MMLU_ITEMS = [
    ("¿Cuántos días tiene una semana?", ["cinco", "seis", "siete", "ocho"], 2),
    ("¿Qué color resulta de mezclar azul y amarillo?", ["verde", "rojo", "negro", "blanco"], 0),
    ("¿Cuál es el animal más grande del océano?", ["el tiburón", "la ballena azul", "el delfín", "la tortuga"], 1),
    ("¿Cuántas patas tiene una araña?", ["seis", "cuatro", "ocho", "diez"], 2),
    ("¿Qué órgano bombea la sangre?", ["el corazón", "el pulmón", "el hígado", "el cerebro"], 0),
    ("¿En qué estación caen las hojas?", ["primavera", "verano", "otoño", "invierno"], 2),
    ("¿Cuál es el metal líquido a temperatura ambiente?", ["el hierro", "el mercurio", "el oro", "la plata"], 1),
    ("¿Cuántos minutos tiene una hora?", ["treinta", "cincuenta", "sesenta", "noventa"], 2),
]

MMLU_EXEMPLARS = [
    ("¿Cuántas horas tiene un día?", ["doce", "veinte", "veinticuatro", "treinta"], 2),
    ("¿De qué color es el cielo despejado?", ["azul", "verde", "rojo", "gris"], 0),
    ("¿Qué animal da leche?", ["la gallina", "la vaca", "el pez", "la serpiente"], 1),
    ("¿Cuántos lados tiene un triángulo?", ["dos", "tres", "cuatro", "cinco"], 1),
    ("¿Dónde viven los peces?", ["en el aire", "en la tierra", "en el agua", "en el fuego"], 2),
    ("¿Qué usamos para escribir?", ["un lápiz", "una cuchara", "un zapato", "una silla"], 0),
]

STORY_ITEMS = [
    ("Ana perdió su paraguas por la mañana. Por la tarde empezó a llover. Corrió a la parada del autobús.",
     ["Llegó a casa mojada.", "Ganó un premio de cocina."], 0),
    ("Luis plantó semillas en su jardín. Las regó cada día durante semanas. Un día vio algo verde en la tierra.",
     ["Su bicicleta estaba rota.", "Las plantas empezaron a crecer."], 1),
    ("Marta estudió toda la noche para el examen. Por la mañana bebió un café grande. Entró en el aula con confianza.",
     ["Aprobó el examen sin problemas.", "Olvidó cómo se llamaba su gato."], 0),
    ("El equipo perdió los primeros tres partidos. El entrenador cambió la estrategia. Los jugadores entrenaron más duro.",
     ["El estadio se convirtió en museo.", "Empezaron a ganar partidos."], 1),
    ("Carlos encontró una receta de pan. Compró harina y levadura. Trabajó la masa toda la tarde.",
     ["El pan salió caliente del horno.", "Su coche cambió de color."], 0),
    ("La familia preparó las maletas el jueves. El viernes salieron temprano hacia la costa. El viaje duró cuatro horas.",
     ["El ordenador aprendió a cantar.", "Llegaron a la playa por la tarde."], 1),
    ("Elena escuchó un ruido en el tejado. Subió las escaleras con una linterna. Abrió la pequeña ventana.",
     ["Encontró un nido de pájaros.", "El mar se llenó de flores."], 0),
    ("El panadero abrió la tienda al amanecer. Horneó pan durante toda la mañana. A mediodía ya no quedaba casi nada.",
     ["Las nubes compraron zapatos.", "Vendió el último pan y cerró contento."], 1),
]

STORY_EXEMPLARS = [
    ("Pedro tenía hambre después del trabajo. Abrió el refrigerador y encontró verduras. Cocinó durante media hora.",
     ["Cenó una sopa caliente.", "Vendió su casa ese minuto."], 0),
    ("La niña encontró un gatito en la calle. Estaba solo y tenía frío. Lo llevó a casa con cuidado.",
     ["El avión llegó a tiempo.", "El gatito durmió caliente esa noche."], 1),
    ("Jorge entrenó todo el invierno. La carrera era el domingo. Se levantó temprano y desayunó bien.",
     ["Corrió la carrera con fuerza.", "Pintó la cocina de verde."], 0),
    ("Lucía escribió una carta a su abuela. Compró un sello en el correo. Caminó hasta el buzón de la esquina.",
     ["El perro aprendió francés.", "Envió la carta con una sonrisa."], 1),
    ("El cocinero probó la sopa. Le faltaba un poco de sal. Buscó en la cocina.",
     ["Añadió sal y probó otra vez.", "Compró un barco nuevo."], 0),
    ("Sara quería ver las estrellas. Esperó hasta la noche. Subió al tejado con una manta.",
     ["El supermercado cerró temprano.", "Miró el cielo durante horas."], 1),
]


def _is_punct(ch: str) -> bool:
    return unicodedata.category(ch)[0] in "PS"


def tokenize(text: str) -> list[tuple[str, bool]]:
    """Split into conllu tokens: words plus detached edge punctuation.

    Returns (token, space_after) pairs.
    """
    out: list[tuple[str, bool]] = []
    words = text.split()
    for word in words:
        start, end = 0, len(word)
        while start < end and _is_punct(word[start]):
            start += 1
        while end > start and _is_punct(word[end - 1]):
            end -= 1
        lead, core, trail = word[:start], word[start:end], word[end:]
        for ch in lead:
            out.append((ch, False))
        if core:
            out.append((core, not trail))
        for i, ch in enumerate(trail):
            out.append((ch, i == len(trail) - 1))
    if out:
        token, _ = out[-1]
        out[-1] = (token, False)
    return out


def vocab_entry(core: str):
    low = core.lower()
    if low in NAMES:
        return (NAMES[low], "PROPN", "", NAMES[low])
    entry = VOCAB.get(low)
    if entry is None:
        raise SystemExit(f"vocabulary is missing test token: {core!r}")
    return entry


def conllu_sentence(sent_id: str, text: str) -> str:
    lines = [f"# sent_id = {sent_id}", f"# text = {text}"]
    for i, (token, space_after) in enumerate(tokenize(text), 1):
        if all(_is_punct(ch) for ch in token):
            lemma, upos, feats = token, "PUNCT", "_"
        else:
            lemma, upos, feats, _ = vocab_entry(token)
            feats = feats or "_"
        misc = "_" if space_after else "SpaceAfter=No"
        lines.append(
            f"{i}\t{token}\t{lemma}\t{upos}\t_\t{feats}\t0\tdep\t_\t{misc}"
        )
    return "\n".join(lines) + "\n"


def write_jsonl(path: Path, rows: list[dict]) -> None:
    with path.open("w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


def write_tsv_lexicon(path: Path, entries: dict[str, str], provenance: str) -> None:
    lines = [f"# provenance: {provenance}"]
    for word in sorted(entries):
        lines.append(f"{word}\t{entries[word]}")
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "pivot").mkdir(exist_ok=True)
    (OUT / "tasks").mkdir(exist_ok=True)

    samples = [
        {"id": f"mt-{i:04d}", "domain": domain, "source": spa, "target": eng}
        for i, (domain, spa, eng) in enumerate(SENTENCES, 1)
    ]
    write_jsonl(OUT / "testset.jsonl", samples)

    write_jsonl(
        OUT / "exemplars.jsonl",
        [
            {"id": i, "domain": domain, "source": spa, "target": eng}
            for i, (domain, spa, eng) in enumerate(EXEMPLARS, 1)
        ],
    )

    # Working lexicon: vocabulary surfaces minus the held-out forms, plus
    # infinitive entries keyed by lemma.
    lexicon: dict[str, str] = {}
    for surface, (_, upos, _, glosses) in VOCAB.items():
        if surface in EXCLUDED_SURFACES:
            continue
        lexicon[surface] = glosses
    for lemma, glosses in LEMMA_GLOSSES.items():
        lexicon.setdefault(lemma, glosses)
    write_tsv_lexicon(OUT / "lexicon.tsv", lexicon, "fixture seed dictionary spa-eng")

    # Inverted lexicon for from-English runs: single-word glosses only.
    inverted: dict[str, list[str]] = {}
    for surface, (_, _, _, glosses) in VOCAB.items():
        if surface in EXCLUDED_SURFACES:
            continue
        for gloss in glosses.split(","):
            if " " in gloss:
                continue
            bucket = inverted.setdefault(gloss.lower(), [])
            if surface not in bucket:
                bucket.append(surface)
    write_tsv_lexicon(
        OUT / "lexicon_eng.tsv",
        {word: ",".join(targets[:3]) for word, targets in inverted.items()},
        "fixture seed dictionary eng-spa",
    )

    # Oracle lexicon: full coverage of every word token in the test set.
    oracle: dict[str, str] = {}
    for sample in samples:
        for token, _ in tokenize(sample["source"]):
            if all(_is_punct(ch) for ch in token):
                continue
            low = token.lower()
            key = NAMES.get(low, low)
            oracle[key] = vocab_entry(token)[3]
    write_tsv_lexicon(OUT / "oracle_lexicon.tsv", oracle, "fixture oracle coverage spa-eng")

    with (OUT / "annotations.conllu").open("w", encoding="utf-8") as handle:
        for sample in samples:
            handle.write(conllu_sentence(sample["id"], sample["source"]))
            handle.write("\n")
    (OUT / "annotations_eng.conllu").write_text(ENG_CONLLU, encoding="utf-8")

    # Span bounds are token indices into the conllu tokenization.
    ne_rows = []
    for sample in samples:
        tokens = [token for token, _ in tokenize(sample["source"])]
        for idx, token in enumerate(tokens):
            if token in NE_LABELS:
                ne_rows.append(
                    f"{sample['id']}\t{idx}\t{idx + 1}\t"
                    f"{NE_LABELS[token]}\t{token}"
                )
    (OUT / "ne_spans.tsv").write_text("\n".join(ne_rows) + "\n", encoding="utf-8")
    (OUT / "transliterations.tsv").write_text(
        "\n".join(f"{name}\t{name}" for name in sorted(NE_LABELS)) + "\n",
        encoding="utf-8",
    )

    (OUT / "syntax_profile.json").write_text(
        json.dumps(SYNTAX_PROFILE, ensure_ascii=False, indent=2) + "\n",
        encoding="utf-8",
    )
    (OUT / "paradigms.txt").write_text(PARADIGMS, encoding="utf-8")

    write_tsv_lexicon(
        OUT / "pivot" / "lexicon.tsv", PIVOT_LEXICON, "fixture pivot dictionary fra-spa"
    )
    write_jsonl(
        OUT / "pivot" / "exemplars.jsonl",
        [
            {"id": i, "domain": domain, "source": fra, "target": spa}
            for i, (domain, fra, spa) in enumerate(PIVOT_EXEMPLARS, 1)
        ],
    )
    (OUT / "pivot" / "annotations.conllu").write_text(PIVOT_CONLLU, encoding="utf-8")
    write_jsonl(
        OUT / "pivot" / "pivot_texts.jsonl",
        [{"id": k, "text": v} for k, v in PIVOT_TEXTS.items()],
    )

    write_jsonl(
        OUT / "tasks" / "nli.jsonl",
        [
            {"id": f"nli-{i:03d}", "premise": p, "hypothesis": h, "label": label}
            for i, (p, h, label) in enumerate(NLI_ITEMS, 1)
        ],
    )
    write_jsonl(
        OUT / "tasks" / "nli_exemplars.jsonl",
        [
            {"id": f"nlix-{i:03d}", "premise": p, "hypothesis": h, "label": label}
            for i, (p, h, label) in enumerate(NLI_EXEMPLARS, 1)
        ],
    )
    write_jsonl(
        OUT / "tasks" / "mmlu.jsonl",
        [
            {"id": f"mmlu-{i:03d}", "question": q, "options": opts, "answer": answer}
            for i, (q, opts, answer) in enumerate(MMLU_ITEMS, 1)
        ],
    )
    write_jsonl(
        OUT / "tasks" / "mmlu_exemplars.jsonl",
        [
            {"id": f"mmlux-{i:03d}", "question": q, "options": opts, "answer": answer}
            for i, (q, opts, answer) in enumerate(MMLU_EXEMPLARS, 1)
        ],
    )
    write_jsonl(
        OUT / "tasks" / "storycloze.jsonl",
        [
            {"id": f"story-{i:03d}", "story": s, "continuations": conts, "answer": answer}
            for i, (s, conts, answer) in enumerate(STORY_ITEMS, 1)
        ],
    )
    write_jsonl(
        OUT / "tasks" / "storycloze_exemplars.jsonl",
        [
            {"id": f"storyx-{i:03d}", "story": s, "continuations": conts, "answer": answer}
            for i, (s, conts, answer) in enumerate(STORY_EXEMPLARS, 1)
        ],
    )

    counts = {
        "samples": len(samples),
        "exemplars": len(EXEMPLARS),
        "lexicon": len(lexicon),
        "oracle": len(oracle),
        "inverted": len(inverted),
    }
    print(json.dumps(counts))


if __name__ == "__main__":
    main()

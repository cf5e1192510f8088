# Each article: title, list of paragraphs; paragraph = (context, [(question, answer, occurrence)])
ARTICLES = [
("Danube", [
("The Danube is the second-longest river in Europe, after the Volga in Russia. It flows through much of Central and Eastern Europe, from the Black Forest to the Black Sea. The river rises in the town of Donaueschingen in Germany, and it flows southeast for about 2,850 km before draining into the Black Sea. Historically the Danube was a long-standing frontier of the Roman Empire. Today it passes through ten countries, more than any other river in the world. Its drainage basin covers an area of roughly 801,463 square kilometres.",
 [("Which river in Europe is longer than the Danube?", "the Volga", 0),
  ("How far does the Danube flow before reaching the Black Sea?", "about 2,850 km", 0),
  ("How many countries does the Danube pass through today?", "ten countries", 0)]),
("Several capital cities lie on the banks of the Danube, including Vienna, Bratislava, Budapest and Belgrade. Shipping on the river was regulated by the Danube Commission, which was founded in 1856. The Danube–Black Sea Canal shortens the route to the port of Constanța by about 400 km. In the 19th century, steamships began to carry passengers between Vienna and Budapest, and the journey took less than two days. The Iron Gates gorge forms part of the border between Serbia and Romania.",
 [("When was the Danube Commission founded?", "1856", 0),
  ("Which port does the canal route shorten the journey to?", "Constanța", 0),
  ("Which gorge forms part of the border between Serbia and Romania?", "The Iron Gates", 0)]),
]),
("Marie_Curie", [
("Marie Curie was a Polish and naturalised-French physicist and chemist who conducted pioneering research on radioactivity. She was born in Warsaw in 1867, and she moved to Paris in 1891 to continue her studies. She was the first woman to win a Nobel Prize. She is also the only person to win a Nobel Prize in two different scientific fields. Her husband, Pierre Curie, shared her first Nobel Prize in 1903.",
 [("In which city was Marie Curie born?", "Warsaw", 0),
  ("In what year did Curie move to Paris?", "1891", 0),
  ("Who shared Marie Curie's first Nobel Prize?", "Pierre Curie", 0)]),
("Curie discovered two elements, polonium and radium, with her husband. She named the first element polonium after her native country, and the discovery was announced in July 1898. During World War I she developed mobile radiography units to provide X-ray services to field hospitals. These units became known as “petites Curies” among the soldiers. She died in 1934 from aplastic anaemia, which was probably caused by her long exposure to radiation.",
 [("Which two elements did Curie discover?", "polonium and radium", 0),
  ("When was the discovery of polonium announced?", "July 1898", 0),
  ("What was the likely cause of Curie's aplastic anaemia?", "her long exposure to radiation", 0)]),
]),
("Great_Barrier_Reef", [
("The Great Barrier Reef is the world's largest coral reef system. It is composed of over 2,900 individual reefs and 900 islands, and it stretches for over 2,300 kilometres. The reef is located in the Coral Sea, off the coast of Queensland, Australia. It can be seen from outer space. It is the world's biggest single structure made by living organisms.",
 [("How many individual reefs make up the Great Barrier Reef?", "over 2,900", 0),
  ("In which sea is the reef located?", "the Coral Sea", 0),
  ("Off the coast of which Australian state is the reef?", "Queensland", 0)]),
("The reef was selected as a World Heritage Site in 1981. A large part of the reef is protected by the Great Barrier Reef Marine Park, and fishing is restricted in many of its zones. Climate change, pollution and coral bleaching are the main threats to the reef. Mass bleaching events occurred in 1998, 2002, 2016 and 2017. Tourism to the reef generates an estimated 6.4 billion dollars each year for the Australian economy.",
 [("When was the reef selected as a World Heritage Site?", "1981", 0),
  ("What restricts fishing in many zones?", "the Great Barrier Reef Marine Park", 0),
  ("How much does tourism to the reef generate each year?", "6.4 billion dollars", 0)]),
]),
("Printing_press", [
("Johannes Gutenberg introduced printing to Europe with his mechanical movable-type printing press around 1440. He was a goldsmith by trade, and he applied his knowledge of metals to the casting of type. His major work, the Gutenberg Bible, was printed in the city of Mainz. About 180 copies of the Bible were produced. Fewer than 50 of them survive today.",
 [("Around what year did Gutenberg introduce his printing press?", "around 1440", 0),
  ("What was Gutenberg's trade?", "goldsmith", 0),
  ("In which city was the Gutenberg Bible printed?", "Mainz", 0)]),
("Printing spread rapidly from Mainz to more than 200 cities in a dozen European countries. By 1500, printing presses in operation throughout Western Europe had already produced more than twenty million volumes. The press made books far cheaper, and literacy rates rose across the continent over the following centuries. Martin Luther used the printing press to distribute his ideas widely after 1517. Some historians describe the invention as the most important event of the second millennium.",
 [("How many cities had printing spread to?", "more than 200 cities", 0),
  ("How many volumes had been produced by 1500?", "more than twenty million volumes", 0),
  ("Who used the press to spread his ideas after 1517?", "Martin Luther", 0)]),
]),
("Amazon_rainforest", [
("The Amazon rainforest is a moist broadleaf tropical rainforest in the Amazon biome. It covers most of the Amazon basin of South America, and the basin itself encompasses about 7,000,000 square kilometres. The majority of the forest is contained within Brazil, with 60% of the rainforest. Peru holds 13% of the forest, and Colombia holds about 10%. Smaller amounts are found in Venezuela, Ecuador, Bolivia, Guyana, Suriname and French Guiana.",
 [("Which country contains the majority of the Amazon rainforest?", "Brazil", 0),
  ("What share of the forest does Peru hold?", "13%", 0),
  ("How large is the Amazon basin?", "about 7,000,000 square kilometres", 0)]),
("The rainforest represents over half of the planet's remaining rainforests. It comprises the largest and most biodiverse tract of tropical rainforest in the world, with an estimated 390 billion individual trees. These trees are divided into about 16,000 species. Deforestation has been driven mainly by cattle ranching, and soybean farming has also played a significant role. Scientists warn that the forest could reach a tipping point if losses continue.",
 [("How many individual trees are estimated to grow in the Amazon?", "390 billion", 0),
  ("How many tree species are there?", "about 16,000 species", 0),
  ("What has mainly driven deforestation?", "cattle ranching", 0)]),
]),
("Apollo_11", [
("Apollo 11 was the American spaceflight that first landed humans on the Moon. Commander Neil Armstrong and lunar module pilot Buzz Aldrin landed the Apollo Lunar Module Eagle on July 20, 1969. Armstrong became the first person to step onto the lunar surface six hours and 39 minutes later. Aldrin joined him 19 minutes after that. Michael Collins flew the command module Columbia alone in lunar orbit.",
 [("What was the name of the lunar module?", "Eagle", 0),
  ("On what date did the lunar module land?", "July 20, 1969", 0),
  ("Who flew the command module alone in lunar orbit?", "Michael Collins", 0)]),
("The mission was launched by a Saturn V rocket from Kennedy Space Center in Florida on July 16. The astronauts spent about two and a quarter hours together outside the spacecraft, and they collected 47.5 pounds of lunar material. The crew returned to Earth and splashed down in the Pacific Ocean on July 24. The mission fulfilled a national goal proposed in 1961 by U.S. President John F. Kennedy. An estimated 650 million people watched the first steps on television.",
 [("Which rocket launched Apollo 11?", "a Saturn V rocket", 0),
  ("How much lunar material did the astronauts collect?", "47.5 pounds", 0),
  ("Which president proposed the national goal?", "John F. Kennedy", 0)]),
]),
("Beethoven", [
("Ludwig van Beethoven was a German composer and pianist. He was born in Bonn in 1770, and he showed his musical talents at an early age. He moved to Vienna at the age of 21 to study composition with Joseph Haydn. His hearing began to deteriorate in his late twenties. By the last decade of his life he was almost completely deaf.",
 [("Where was Beethoven born?", "Bonn", 0),
  ("With whom did Beethoven study composition in Vienna?", "Joseph Haydn", 0),
  ("When did Beethoven's hearing begin to deteriorate?", "in his late twenties", 0)]),
("Beethoven wrote nine symphonies, five piano concertos and a single opera. The Ninth Symphony was first performed in Vienna on 7 May 1824, and its final movement sets Schiller's poem Ode to Joy. His only opera is called Fidelio. He died in Vienna in March 1827 at the age of 56. More than 10,000 people are said to have attended his funeral procession.",
 [("How many symphonies did Beethoven write?", "nine symphonies", 0),
  ("What is the name of Beethoven's only opera?", "Fidelio", 0),
  ("When was the Ninth Symphony first performed?", "7 May 1824", 0)]),
]),
("Photosynthesis", [
("Photosynthesis is a process used by plants and other organisms to convert light energy into chemical energy. The chemical energy is stored in carbohydrate molecules, and these molecules are synthesized from carbon dioxide and water. Most plants, algae and cyanobacteria perform photosynthesis. Such organisms are called photoautotrophs. Photosynthesis is largely responsible for producing the oxygen content of the Earth's atmosphere.",
 [("What does photosynthesis convert light energy into?", "chemical energy", 0),
  ("What are organisms that perform photosynthesis called?", "photoautotrophs", 0),
  ("From what are carbohydrate molecules synthesized?", "carbon dioxide and water", 0)]),
("In plants the process takes place in organelles called chloroplasts. The light-dependent reactions occur in the thylakoid membranes, and they produce ATP and NADPH as energy carriers. The Calvin cycle then uses these carriers to fix carbon. The average rate of energy capture by photosynthesis globally is approximately 130 terawatts. This is about eight times the current power consumption of human civilization.",
 [("In which organelles does photosynthesis take place in plants?", "chloroplasts", 0),
  ("What do the light-dependent reactions produce?", "ATP and NADPH", 0),
  ("What is the average global rate of energy capture?", "approximately 130 terawatts", 0)]),
]),
("Colosseum", [
("The Colosseum is an elliptical amphitheatre in the centre of the city of Rome. Construction began under the emperor Vespasian in AD 72, and it was completed in AD 80 under his successor Titus. It is the largest ancient amphitheatre ever built. It could hold an estimated 50,000 to 80,000 spectators. The building was used for gladiatorial contests and public spectacles.",
 [("Under which emperor did construction begin?", "Vespasian", 0),
  ("In what year was the Colosseum completed?", "AD 80", 0),
  ("How many spectators could the Colosseum hold?", "50,000 to 80,000", 0)]),
("The amphitheatre ceased to be used for entertainment in the early medieval era. It was later reused for housing, workshops and a fortress, and a Christian shrine was built inside it. Earthquakes and stone robbers caused severe damage to the structure over the centuries. The arena measured 83 m by 48 m. Today it is one of Rome's most popular tourist attractions, with several million visitors each year.",
 [("What caused severe damage to the structure?", "Earthquakes and stone robbers", 0),
  ("How large was the arena?", "83 m by 48 m", 0),
  ("What was built inside the amphitheatre?", "a Christian shrine", 0)]),
]),
("Kilimanjaro", [
("Mount Kilimanjaro is a dormant volcano in Tanzania. It has three volcanic cones, named Kibo, Mawenzi and Shira. It is the highest mountain in Africa, and its summit rises about 5,895 metres above sea level. It is also the highest single free-standing mountain above sea level in the world. The first people known to have reached the summit were Hans Meyer and Ludwig Purtscheller in 1889.",
 [("In which country is Mount Kilimanjaro?", "Tanzania", 0),
  ("How high is the summit of Kilimanjaro?", "about 5,895 metres", 0),
  ("Who first reached the summit?", "Hans Meyer and Ludwig Purtscheller", 0)]),
("The mountain is part of Kilimanjaro National Park, and it is a major climbing destination. Around 30,000 climbers attempt the ascent every year. The glaciers on the summit have shrunk by more than 80% since the early 20th century. Scientists expect the ice cap to disappear within a few decades. The mountain has five main vegetation zones, from farmland on the lower slopes to the arctic summit.",
 [("How many climbers attempt the ascent every year?", "Around 30,000", 0),
  ("By how much have the glaciers shrunk?", "more than 80%", 0),
  ("How many main vegetation zones does the mountain have?", "five", 0)]),
]),
("Penicillin", [
("Penicillin was discovered in 1928 by the Scottish scientist Alexander Fleming. He noticed that a mould had contaminated one of his culture plates, and the bacteria around the mould had been killed. The mould was later identified as Penicillium notatum. Fleming published his findings in 1929. However, he could not produce the drug in useful quantities.",
 [("Who discovered penicillin?", "Alexander Fleming", 0),
  ("In what year was penicillin discovered?", "1928", 0),
  ("What was the mould identified as?", "Penicillium notatum", 0)]),
("In 1939 a team at the University of Oxford led by Howard Florey began to study the drug. Ernst Chain and Norman Heatley developed methods to purify it, and the first patient was treated in 1941. Mass production in the U.S. began during World War II. By D-Day in 1944, enough penicillin had been produced to treat all wounded Allied soldiers. Fleming, Florey and Chain shared the Nobel Prize in Physiology or Medicine in 1945.",
 [("Who led the team at Oxford?", "Howard Florey", 0),
  ("When was the first patient treated?", "1941", 0),
  ("When did Fleming, Florey and Chain share the Nobel Prize?", "1945", 0)]),
]),
("Trans-Siberian_Railway", [
("The Trans-Siberian Railway is a network of railways connecting Moscow with the Russian Far East. It is the longest railway line in the world, with a length of about 9,289 kilometres. The main route runs from Moscow to Vladivostok, and it crosses eight time zones. Construction began in 1891 and was completed in 1916. The journey takes about seven days without stops.",
 [("Which city is the eastern terminus of the main route?", "Vladivostok", 0),
  ("How long is the railway?", "about 9,289 kilometres", 0),
  ("How many time zones does the main route cross?", "eight time zones", 0)]),
("The railway was built under the direction of Russian government ministers, and Sergei Witte oversaw much of the work. The route around Lake Baikal was one of the most difficult sections to build. It required 33 tunnels and more than 200 bridges. Today the line carries about 30% of Russian exports. Branch lines connect it with Mongolia, China and North Korea.",
 [("Who oversaw much of the construction work?", "Sergei Witte", 0),
  ("How many tunnels did the Lake Baikal section need?", "33 tunnels", 0),
  ("What share of Russian exports does the line carry?", "about 30%", 0)]),
]),
("Honeybee", [
("A honey bee is a eusocial flying insect within the genus Apis. Honey bees are known for their construction of perennial colonial nests from wax, and for the large size of their colonies. A typical colony contains a single queen, and it may hold as many as 60,000 workers in summer. The workers gather nectar and pollen from flowers. The western honey bee has been domesticated for honey production and crop pollination.",
 [("To which genus do honey bees belong?", "Apis", 0),
  ("How many workers may a colony hold in summer?", "as many as 60,000 workers", 0),
  ("What do the workers gather from flowers?", "nectar and pollen", 0)]),
("Bees communicate the location of food through a behaviour known as the waggle dance. The direction of the dance indicates the direction of the food source, and the duration of the waggle indicates the distance. Karl von Frisch described this behaviour in detail. He received the Nobel Prize in 1973 for his work on bee communication. A worker bee produces only about 1/12 of a teaspoon of honey in her lifetime.",
 [("What is the behaviour that communicates food location called?", "the waggle dance", 0),
  ("Who described the dance in detail?", "Karl von Frisch", 0),
  ("How much honey does a worker bee produce in her lifetime?", "about 1/12 of a teaspoon", 0)]),
]),
("Eiffel_Tower", [
("The Eiffel Tower is a wrought-iron lattice tower on the Champ de Mars in Paris. It is named after the engineer Gustave Eiffel, whose company designed and built the tower. It was constructed from 1887 to 1889 as the centerpiece of the 1889 World's Fair. It was initially criticised by some of France's leading artists, and a committee published a protest against it. The tower is 330 metres tall.",
 [("After whom is the Eiffel Tower named?", "Gustave Eiffel", 0),
  ("On which field does the tower stand?", "the Champ de Mars", 0),
  ("How tall is the Eiffel Tower?", "330 metres", 0)]),
("The tower was the tallest man-made structure in the world until the Chrysler Building in New York was finished in 1930. It has three levels for visitors, and restaurants are located on the first and second levels. The top level's upper platform is 276 m above the ground. Nearly 7 million people ascend the tower every year. It was the first structure to reach a height of 300 metres.",
 [("Which building overtook the tower as the tallest structure?", "the Chrysler Building", 0),
  ("How high is the upper platform of the top level?", "276 m", 0),
  ("How many people ascend the tower every year?", "Nearly 7 million", 0)]),
]),
("Antarctica", [
("Antarctica is Earth's southernmost continent and contains the geographic South Pole. It is the fifth-largest continent, and its area is about 14,200,000 square kilometres. About 98% of Antarctica is covered by ice that averages 1.9 km in thickness. Antarctica is the coldest, driest and windiest of the continents. The lowest natural temperature ever recorded on Earth was −89.2 °C at the Soviet Vostok Station in 1983.",
 [("Which geographic point does Antarctica contain?", "the geographic South Pole", 0),
  ("How thick is the ice on average?", "1.9 km", 0),
  ("At which station was the lowest natural temperature recorded?", "the Soviet Vostok Station", 0)]),
("The Antarctic Treaty was signed in 1959 by twelve countries. It prohibits military activities and mineral mining, and it supports scientific research on the continent. About 70 research stations are operated by the signatory nations. The population of researchers varies from about 1,000 in winter to about 5,000 in summer. Roald Amundsen led the first expedition to reach the South Pole in December 1911.",
 [("How many countries signed the Antarctic Treaty in 1959?", "twelve countries", 0),
  ("What does the treaty prohibit?", "military activities and mineral mining", 0),
  ("Who led the first expedition to reach the South Pole?", "Roald Amundsen", 0)]),
]),
("Silk_Road", [
("The Silk Road was a network of trade routes connecting the East and West. It was central to the economic, cultural and political interactions between these regions from the 2nd century BC to the 18th century. The name comes from the lucrative trade in silk carried out along its length, and the route began during the Han dynasty of China. The network extended over 6,400 kilometres. Traders carried paper, gunpowder and spices along the routes.",
 [("During which dynasty did the Silk Road begin?", "the Han dynasty", 0),
  ("How far did the network extend?", "over 6,400 kilometres", 0),
  ("From what does the name of the Silk Road come?", "the lucrative trade in silk", 0)]),
("The Venetian merchant Marco Polo travelled along the route in the 13th century. His account of the journey made the routes famous in Europe, and it inspired many later explorers. Cities such as Samarkand and Bukhara grew wealthy from the trade. The term Silk Road was coined in 1877 by the German geographer Ferdinand von Richthofen. In 2014 a section of the routes was inscribed as a UNESCO World Heritage Site.",
 [("Which Venetian merchant travelled the route in the 13th century?", "Marco Polo", 0),
  ("Who coined the term Silk Road?", "Ferdinand von Richthofen", 0),
  ("When was the term Silk Road coined?", "1877", 0)]),
]),
("Mount_Vesuvius", [
("Mount Vesuvius is a somma-stratovolcano located on the Gulf of Naples in Campania, Italy. It is best known for its eruption in AD 79, and that eruption destroyed the Roman cities of Pompeii and Herculaneum. The eruption ejected a cloud of stones, ash and volcanic gases to a height of 33 km. Pliny the Younger wrote the only surviving eyewitness account. Vesuvius has erupted many times since.",
 [("On which gulf is Mount Vesuvius located?", "the Gulf of Naples", 0),
  ("Which Roman cities did the eruption destroy?", "Pompeii and Herculaneum", 0),
  ("How high did the cloud of stones and ash reach?", "33 km", 0)]),
("The last major eruption of the volcano was in 1944. Vesuvius is regarded as one of the most dangerous volcanoes in the world, and about 3,000,000 people live near it. The area around the volcano was declared a national park in 1995. An evacuation plan for the surrounding towns has been prepared by the Italian government. Scientists at the Vesuvius Observatory monitor the volcano continuously.",
 [("When was the last major eruption?", "1944", 0),
  ("How many people live near Vesuvius?", "about 3,000,000 people", 0),
  ("Who monitors the volcano continuously?", "Scientists at the Vesuvius Observatory", 0)]),
]),
("Hubble_Space_Telescope", [
("The Hubble Space Telescope is a space telescope that was launched into low Earth orbit in 1990. It was carried into orbit by the Space Shuttle Discovery, and it remains in operation today. The telescope is named after the astronomer Edwin Hubble. Its main mirror has a diameter of 2.4 m. Hubble orbits the Earth about once every 95 minutes.",
 [("When was the Hubble Space Telescope launched?", "1990", 0),
  ("Which shuttle carried Hubble into orbit?", "the Space Shuttle Discovery", 0),
  ("What is the diameter of the main mirror?", "2.4 m", 0)]),
("Shortly after launch, scientists found that the main mirror had been ground incorrectly. A servicing mission in 1993 installed corrective optics, and the telescope's vision was restored. Astronauts visited the telescope five times for repairs and upgrades. Hubble's observations helped to determine the rate of expansion of the universe. Its successor, the James Webb Space Telescope, was launched in December 2021.",
 [("What was wrong with the main mirror?", "ground incorrectly", 0),
  ("How many times did astronauts visit the telescope?", "five times", 0),
  ("What is the name of Hubble's successor?", "the James Webb Space Telescope", 0)]),
]),
("Chess", [
("Chess is a board game for two players, and it is played on a square board of 64 squares. Each player begins with 16 pieces, and the object of the game is to checkmate the opponent's king. The game is believed to have originated in India before the 6th century AD. The rules of modern chess emerged in southern Europe during the second half of the 15th century. The first official World Chess Champion was Wilhelm Steinitz in 1886.",
 [("How many squares are on a chess board?", "64 squares", 0),
  ("Where is chess believed to have originated?", "India", 0),
  ("Who was the first official World Chess Champion?", "Wilhelm Steinitz", 0)]),
("Since the second half of the 20th century, chess engines have been programmed to play the game. In 1997 the computer Deep Blue defeated the reigning champion Garry Kasparov. Today engines are far stronger than the best human players, and they are widely used for analysis. FIDE, the international governing body, was founded in Paris in 1924. The number of possible chess games is estimated to be at least 10^120.",
 [("Which computer defeated Garry Kasparov?", "Deep Blue", 0),
  ("Where was FIDE founded?", "Paris", 0),
  ("In what year was FIDE founded?", "1924", 0)]),
]),
("Panama_Canal", [
("The Panama Canal is an artificial waterway in Panama that connects the Atlantic Ocean with the Pacific Ocean. France began work on the canal in 1881, and the project was abandoned because of engineering problems and disease. The United States took over the project in 1904 and opened the canal in 1914. The canal is about 82 km long. Locks at each end lift ships up to Gatun Lake, which is 26 metres above sea level.",
 [("Which two oceans does the Panama Canal connect?", "the Atlantic Ocean with the Pacific Ocean", 0),
  ("When did the United States open the canal?", "1914", 0),
  ("To which lake do the locks lift ships?", "Gatun Lake", 0)]),
("Control of the canal was transferred to Panama in 1999 under the Torrijos–Carter Treaties. An expansion project added a third lane of larger locks, and the new locks opened in June 2016. Roughly 14,000 ships pass through the canal each year. A typical transit takes about 8 to 10 hours. The American Society of Civil Engineers has named the canal one of the seven wonders of the modern world.",
 [("When was control of the canal transferred to Panama?", "1999", 0),
  ("When did the new locks open?", "June 2016", 0),
  ("How many ships pass through the canal each year?", "Roughly 14,000 ships", 0)]),
]),
]
